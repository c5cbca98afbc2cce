// Command-line front end: batch analyses of pairs of diagonal cubic forms.
// Subcommands: analyze, local, series, integral, count (np|moment|trend),
// search (single|pair), pipeline, plot-data.
// Exit codes: 0 success, 2 resource/budget failure, 3 validation failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dcpair/errors.hpp"
#include "dcpair/report.hpp"

using namespace dcpair;

namespace {

std::vector<i64> parse_list(const std::string& csv) {
  std::vector<i64> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoll(item));
    } catch (...) {
      throw validation_error("BadList", "cannot parse integer '" + item + "'");
    }
  }
  if (out.empty()) throw validation_error("BadList", "empty integer list");
  return out;
}

struct SystemArgs {
  std::string path;
  std::string a_csv, b_csv;

  CubicPairSystem load() const {
    if (!path.empty()) return system_from_file(path);
    if (!a_csv.empty() && !b_csv.empty()) return build_system(parse_list(a_csv), parse_list(b_csv));
    throw validation_error("NoSystem", "provide --system FILE or both --a and --b");
  }
};

void add_system_options(CLI::App* cmd, SystemArgs& args) {
  cmd->add_option("--system", args.path, "system definition file {\"a\":[..],\"b\":[..]}");
  cmd->add_option("--a", args.a_csv, "inline a coefficients, comma separated");
  cmd->add_option("--b", args.b_csv, "inline b coefficients, comma separated");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw validation_error("BadOutput", "cannot open " + out_path);
    f << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numerical analysis of pairs of diagonal cubic forms"};
  app.require_subcommand(1);
  app.fallthrough();  // global options (--out, budgets) may follow the subcommand

  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  size_t budget_mem = size_t(1) << 28;
  double budget_time = 0.0;
  app.add_option("--budget-mem", budget_mem, "max table entries for counting kernels");
  app.add_option("--budget-time", budget_time, "soft time budget in seconds (0 = off)");

  // --- analyze ---
  auto* analyze = app.add_subcommand("analyze", "full report for one system");
  SystemArgs an_sys;
  add_system_options(analyze, an_sys);
  RunConfig an_cfg;
  analyze->add_option("--P", an_cfg.P, "box scale for the smooth density and the integral");
  analyze->add_option("--eta", an_cfg.eta, "lower-cut parameter in (0,1)");
  analyze->add_option("--X-series", an_cfg.X_series, "singular series cutoff");
  analyze->add_option("--X-integral", an_cfg.X_integral, "singular integral cutoff");
  analyze->add_option("--pmax", an_cfg.p_bound, "largest prime checked locally");
  analyze->add_option("--depth", an_cfg.depth, "lifting depth bound (0 = default rule)");
  analyze->add_option("--H", an_cfg.height_cap, "search height cap");
  analyze->add_option("--mc-samples", an_cfg.mc_samples, "Monte Carlo samples");
  analyze->add_option("--seed", an_cfg.seed, "Monte Carlo seed");

  // --- local ---
  auto* local = app.add_subcommand("local", "p-adic solubility profile");
  SystemArgs lo_sys;
  add_system_options(local, lo_sys);
  u64 lo_pmax = 50;
  int lo_depth = 0;
  u64 chi_p = 0;
  int chi_hmax = 3;
  local->add_option("--pmax", lo_pmax, "largest prime checked");
  local->add_option("--depth", lo_depth, "lifting depth bound (0 = default rule)");
  local->add_option("--chi-p", chi_p, "also emit the local density sequence at this prime");
  local->add_option("--chi-hmax", chi_hmax, "depth of the local density sequence");

  // --- series ---
  auto* series = app.add_subcommand("series", "exact singular series terms");
  SystemArgs se_sys;
  add_system_options(series, se_sys);
  u64 se_X = 100;
  u64 se_monitor = 0;
  series->add_option("--X", se_X, "exact cutoff");
  series->add_option("--monitor-X", se_monitor, "extend the float decay monitor to this cutoff");

  // --- integral ---
  auto* integral = app.add_subcommand("integral", "singular integral and polytope value");
  SystemArgs in_sys;
  add_system_options(integral, in_sys);
  double in_P = 32, in_X = 50, in_eta = 0.1;
  u64 in_samples = 200000, in_seed = 1, in_Xseries = 100;
  integral->add_option("--P", in_P, "scale");
  integral->add_option("--X", in_X, "truncation cutoff");
  integral->add_option("--eta", in_eta, "lower-cut parameter");
  integral->add_option("--mc-samples", in_samples, "Monte Carlo samples");
  integral->add_option("--seed", in_seed, "Monte Carlo seed");
  integral->add_option("--X-series", in_Xseries, "series cutoff for the prediction factor");

  // --- count ---
  auto* count = app.add_subcommand("count", "exact counting kernels");
  count->require_subcommand(1);
  auto* count_np = count->add_subcommand("np", "solutions of the pair in [-P,P]^s");
  SystemArgs np_sys;
  add_system_options(count_np, np_sys);
  i64 np_P = 3;
  bool np_trivial = true;
  bool np_oracle = false;
  count_np->add_option("--P", np_P, "box radius");
  count_np->add_flag("--include-trivial,!--no-trivial", np_trivial, "count the zero vector");
  count_np->add_flag("--with-oracle", np_oracle, "also run the quadrature oracle");

  auto* count_moment = count->add_subcommand("moment", "even moments of smooth Weyl sums");
  std::string mo_kind = "sixth";
  i64 mo_P = 6, mo_R = 0;
  std::string mo_c = "1,0,1", mo_d = "0,1,1", mo_e = "4,4,4";
  count_moment->add_option("--kind", mo_kind, "sixth | pair");
  count_moment->add_option("--P", mo_P, "range bound");
  count_moment->add_option("--R", mo_R, "smoothness bound (0 = default rule)");
  count_moment->add_option("--c", mo_c, "pair kind: first coefficient row");
  count_moment->add_option("--d", mo_d, "pair kind: second coefficient row");
  count_moment->add_option("--e", mo_e, "pair kind: even exponent triple");

  auto* count_trend = count->add_subcommand("trend", "counts and slopes over a P list");
  std::string tr_kind = "sixth", tr_plist = "2,3,4,5,6";
  double tr_theta = 2.0 / 3.0;
  std::string tr_c = "1,0,1", tr_d = "0,1,1", tr_e = "4,4,4";
  count_trend->add_option("--kind", tr_kind, "sixth | pair");
  count_trend->add_option("--P-list", tr_plist, "comma separated P values");
  count_trend->add_option("--theta", tr_theta, "smoothness exponent for R = P^theta");
  count_trend->add_option("--c", tr_c, "pair kind: first coefficient row");
  count_trend->add_option("--d", tr_d, "pair kind: second coefficient row");
  count_trend->add_option("--e", tr_e, "pair kind: even exponent triple");

  // --- search ---
  auto* search = app.add_subcommand("search", "meet-in-the-middle solvers");
  search->require_subcommand(1);
  auto* search_single = search->add_subcommand("single", "one diagonal cubic equation");
  std::string ss_c = "1,1,-2";
  i64 ss_H = 50;
  search_single->add_option("--c", ss_c, "coefficients, comma separated");
  search_single->add_option("--H", ss_H, "height bound");
  auto* search_pair = search->add_subcommand("pair", "split-shape pair construction");
  SystemArgs sp_sys;
  add_system_options(search_pair, sp_sys);
  i64 sp_H = 64;
  search_pair->add_option("--H", sp_H, "height cap");

  // --- pipeline ---
  auto* pipeline = app.add_subcommand("pipeline", "branch report per the two-case analysis");
  SystemArgs pi_sys;
  add_system_options(pipeline, pi_sys);
  i64 pi_H = 512;
  u64 pi_pmax = 50;
  pipeline->add_option("--H", pi_H, "height cap for the constructive branch");
  pipeline->add_option("--pmax", pi_pmax, "largest prime checked locally");

  // --- plot-data ---
  auto* plot = app.add_subcommand("plot-data", "tidy CSV families from stored reports");
  std::vector<std::string> plot_inputs;
  std::string plot_dir = ".";
  plot->add_option("--in", plot_inputs, "report JSON files")->required();
  plot->add_option("--out-dir", plot_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (budget_time > 0.0) {
    // soft deadline: a detached watchdog aborts the run at exit code 2
    std::thread([budget_time] {
      std::this_thread::sleep_for(std::chrono::duration<double>(budget_time));
      std::cerr << "error [BudgetExceeded]: time budget of " << budget_time << " s exhausted\n";
      std::_Exit(2);
    }).detach();
  }

  try {
    CountingBudget cbudget;
    cbudget.max_table_entries = budget_mem;

    if (*analyze) {
      CubicPairSystem sys = an_sys.load();
      an_cfg.system_json = system_to_json_text(sys);
      AnalysisReport rep = analyze_system(sys, an_cfg);
      emit(rep.json, out_path);
    } else if (*local) {
      CubicPairSystem sys = lo_sys.load();
      PadicBudget pb;
      pb.depth_bound = lo_depth;
      LocalProfile prof = local_profile(sys, lo_pmax, pb);
      std::string body = local_profile_to_json(prof);
      if (chi_p >= 2) {
        ChiSequence chi = chi_p_estimate(sys, chi_p, chi_hmax);
        body.pop_back();  // strip closing brace, splice the sequence in
        body += ",\n  \"chi\": " + chi_sequence_to_json(chi) + "\n}";
      }
      emit(body, out_path);
    } else if (*series) {
      CubicPairSystem sys = se_sys.load();
      SeriesBudget sb;
      sb.exact_max = std::max(sb.exact_max, se_X);
      SingularSeriesTruncation ser = truncated_series(sys, se_X, sb);
      std::string body = series_to_json(ser);
      if (se_monitor > se_X) {
        auto rows = series_decay_monitor(sys, se_monitor);
        double worst = 0;
        for (const auto& r : rows) worst = std::max(worst, r.decay_product);
        body.pop_back();
        body += ",\n  \"decay_monitor_X\": " + std::to_string(se_monitor) +
                ",\n  \"decay_monitor_max\": " + std::to_string(worst) + "\n}";
      }
      emit(body, out_path);
    } else if (*integral) {
      CubicPairSystem sys = in_sys.load();
      EchelonResult ech = normalize_pivot_form(sys);
      PositiveKernelPoint kp =
          positive_kernel_point(ech.sys, Rat(static_cast<long>(in_eta * 1000), 1000L));
      CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);
      JValue jv = truncated_singular_integral(flipped, in_X, in_P, in_eta);
      PolytopeIntegral poly = polytope_integral(flipped, in_eta, in_samples, in_seed);
      MainTermPrediction mt =
          main_term_prediction(flipped, sys, in_P, in_eta, in_Xseries, in_X);
      std::ostringstream os;
      os.precision(12);
      os << "{\n  \"J_truncated\": " << jv.value << ",\n  \"J_normalized\": " << jv.normalized
         << ",\n  \"imag_residue\": " << jv.imag_residue
         << ",\n  \"J_polytope\": " << poly.estimate
         << ",\n  \"J_polytope_stderr\": " << poly.stderr_estimate
         << ",\n  \"panels\": " << jv.panels << ",\n  \"rho\": " << mt.rho
         << ",\n  \"series_value\": " << mt.series_value
         << ",\n  \"prediction\": " << mt.prediction << "\n}";
      emit(os.str(), out_path);
    } else if (*count_np) {
      CubicPairSystem sys = np_sys.load();
      CountReport rep = count_solutions_box(sys, np_P, np_trivial, cbudget);
      if (np_oracle) {
        Int oracle = quadrature_box_count_oracle(sys, np_P, 0, 0, cbudget);
        if (!np_trivial) oracle -= 1;
        rep.oracle = oracle;
      }
      emit(count_report_to_json(rep), out_path);
    } else if (*count_moment) {
      CountReport rep;
      if (mo_kind == "sixth") {
        i64 R = mo_R ? mo_R : default_smoothness_bound(mo_P);
        rep = sixth_moment_count(mo_P, R, cbudget);
      } else if (mo_kind == "pair") {
        auto cv = parse_list(mo_c), dv = parse_list(mo_d), evl = parse_list(mo_e);
        if (cv.size() != 3 || dv.size() != 3 || evl.size() != 3)
          throw validation_error("BadList", "pair moment needs three entries in c, d, e");
        i64 R = mo_R ? mo_R : default_smoothness_bound(mo_P);
        rep = even_moment_pair_count({cv[0], cv[1], cv[2]}, {dv[0], dv[1], dv[2]},
                                     {static_cast<int>(evl[0]), static_cast<int>(evl[1]),
                                      static_cast<int>(evl[2])},
                                     mo_P, R, cbudget);
      } else {
        throw validation_error("BadKind", "moment kind must be sixth or pair");
      }
      emit(count_report_to_json(rep), out_path);
    } else if (*count_trend) {
      EvenPairParams params;
      if (tr_kind == "pair") {
        auto cv = parse_list(tr_c), dv = parse_list(tr_d), evl = parse_list(tr_e);
        params.c = {cv[0], cv[1], cv[2]};
        params.d = {dv[0], dv[1], dv[2]};
        params.e = {static_cast<int>(evl[0]), static_cast<int>(evl[1]), static_cast<int>(evl[2])};
      }
      TrendReport rep = moment_trend_report(
          tr_kind == "sixth" ? TrendKind::Sixth : TrendKind::EvenPair, parse_list(tr_plist),
          tr_theta, params, 0.75, cbudget);
      emit(trend_to_csv(rep), out_path);
    } else if (*search_single) {
      auto coeffs = parse_list(ss_c);
      auto sol = solve_single_cubic(coeffs, ss_H);
      std::ostringstream os;
      if (sol) {
        os << "{\n  \"solution\": [";
        for (size_t i = 0; i < sol->size(); ++i) os << (i ? "," : "") << "\"" << (*sol)[i] << "\"";
        os << "]\n}";
      } else {
        os << "{\n  \"solution\": null,\n  \"H\": " << ss_H << "\n}";
      }
      emit(os.str(), out_path);
    } else if (*search_pair) {
      CubicPairSystem sys = sp_sys.load();
      auto dir = degenerate_direction(sys);
      if (!dir) throw validation_error("InvalidDirection", "system has no degenerate direction");
      SplitSystem split = transform_to_split_shape(sys, *dir);
      auto sol = construct_solution_split(split, sp_H);
      std::ostringstream os;
      if (sol) {
        os << "{\n  \"t\": " << split.t << ",\n  \"solution\": [";
        for (size_t i = 0; i < sol->x.size(); ++i)
          os << (i ? "," : "") << "\"" << sol->x[i].get_str() << "\"";
        os << "],\n  \"height\": " << sol->height << "\n}";
      } else {
        os << "{\n  \"t\": " << split.t << ",\n  \"solution\": null,\n  \"search_exhausted\": "
           << sp_H << "\n}";
      }
      emit(os.str(), out_path);
    } else if (*pipeline) {
      CubicPairSystem sys = pi_sys.load();
      PipelineReport rep = hasse_pipeline(sys, pi_H, pi_pmax);
      emit(pipeline_to_json(rep), out_path);
    } else if (*plot) {
      std::vector<std::string> texts;
      for (const std::string& path : plot_inputs) {
        std::ifstream f(path);
        if (!f) throw validation_error("FileNotFound", "cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        texts.push_back(ss.str());
      }
      PlotData data = emit_plot_data(texts);
      namespace fs = std::filesystem;
      fs::create_directories(plot_dir);
      auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream f(fs::path(plot_dir) / name, std::ios::binary);
        f << text;
      };
      write("trend.csv", data.trend_csv);
      write("series.csv", data.series_csv);
      write("chi.csv", data.chi_csv);
      write("jscaling.csv", data.jscaling_csv);
      std::cout << "wrote trend.csv series.csv chi.csv jscaling.csv to " << plot_dir << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return e.kind() == ErrorKind::Validation ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
