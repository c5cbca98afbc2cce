#include "dcpair/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dcpair/errors.hpp"

namespace dcpair {

using nlohmann::json;

double default_cutoff(double P) {
  if (P <= 1.0) return 10.0;
  return std::max(10.0, std::pow(std::log(P), 0.01));
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["system"] = json::parse(cfg.system_json.empty() ? "{}" : cfg.system_json);
  j["P"] = cfg.P;
  j["eta"] = cfg.eta;
  j["X_series"] = cfg.X_series;
  j["X_integral"] = cfg.X_integral;
  j["p_bound"] = cfg.p_bound;
  j["depth"] = cfg.depth;
  j["height_cap"] = cfg.height_cap;
  j["mc_samples"] = cfg.mc_samples;
  j["seed"] = cfg.seed;
  return j.dump();
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error("MalformedJson", std::string("config: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("system")) cfg.system_json = j["system"].dump();
  if (j.contains("P")) cfg.P = j["P"].get<i64>();
  if (j.contains("eta")) cfg.eta = j["eta"].get<double>();
  if (j.contains("X_series")) cfg.X_series = j["X_series"].get<u64>();
  if (j.contains("X_integral")) cfg.X_integral = j["X_integral"].get<double>();
  if (j.contains("p_bound")) cfg.p_bound = j["p_bound"].get<u64>();
  if (j.contains("depth")) cfg.depth = j["depth"].get<int>();
  if (j.contains("height_cap")) cfg.height_cap = j["height_cap"].get<i64>();
  if (j.contains("mc_samples")) cfg.mc_samples = j["mc_samples"].get<u64>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<u64>();
  return cfg;
}

namespace {

json verdict_json(const SolubilityVerdict& v) {
  json j;
  j["p"] = v.p;
  switch (v.verdict) {
    case Verdict::Soluble: {
      j["verdict"] = "soluble";
      json w;
      std::vector<std::string> coords;
      for (const Int& c : v.witness->x) coords.push_back(c.get_str());
      w["x"] = coords;
      w["k"] = v.witness->k;
      w["minor_valuation"] = v.witness->minor_valuation;
      w["minor_columns"] = {v.witness->col_i + 1, v.witness->col_j + 1};
      j["witness"] = w;
      break;
    }
    case Verdict::Insoluble:
      j["verdict"] = "insoluble";
      j["exhaustion_depth"] = v.exhaustion_depth;
      break;
    case Verdict::Unknown:
      j["verdict"] = "unknown";
      j["depth_reached"] = v.depth_reached;
      break;
  }
  return j;
}

json profile_json(const LocalProfile& prof) {
  json j;
  json verdicts = json::object();
  for (const auto& [p, v] : prof.verdicts) verdicts[std::to_string(p)] = verdict_json(v);
  j["verdicts"] = verdicts;
  j["note"] = prof.note;
  return j;
}

json series_json(const SingularSeriesTruncation& ser) {
  json j;
  j["X"] = ser.X;
  j["value"] = rat_string(ser.value);
  j["value_float"] = ser.value.get_d();
  j["max_decay_monitor"] = ser.max_decay_monitor;
  json terms = json::array();
  for (const auto& t : ser.terms) {
    json tj;
    tj["q"] = t.q;
    tj["A"] = rat_string(t.A);
    if (t.A_float) tj["A_float"] = *t.A_float;
    terms.push_back(tj);
  }
  j["terms"] = terms;
  return j;
}

}  // namespace

std::string verdict_to_json(const SolubilityVerdict& v) { return verdict_json(v).dump(2); }

std::string count_report_to_json(const CountReport& rep) {
  json j;
  j["quantity"] = rep.quantity;
  j["exact"] = rep.exact.get_str();
  if (rep.oracle) j["oracle"] = rep.oracle->get_str();
  j["params"] = rep.params;
  j["elapsed_seconds"] = rep.elapsed_seconds;
  return j.dump(2);
}

std::string local_profile_to_json(const LocalProfile& prof) { return profile_json(prof).dump(2); }

std::string chi_sequence_to_json(const ChiSequence& seq) {
  json j;
  j["p"] = seq.p;
  json terms = json::array();
  for (const Rat& t : seq.terms) terms.push_back(rat_string(t));
  j["terms"] = terms;
  j["stabilized"] = seq.stabilized;
  return j.dump(2);
}

std::string series_to_json(const SingularSeriesTruncation& ser) { return series_json(ser).dump(2); }

std::string pipeline_to_json(const PipelineReport& rep) {
  json j;
  j["branch"] = rep.branch;
  j["general_position"] = rep.general_position;
  if (rep.general_position) {
    j["locals"] = profile_json(rep.locals);
    j["prediction_suppressed"] = rep.prediction_suppressed;
  } else {
    if (rep.direction) {
      j["direction"] = {rep.direction->c, rep.direction->d};
      j["split_t"] = rep.split_t;
    }
    if (rep.solution) {
      std::vector<std::string> coords;
      for (const Int& c : rep.solution->x) coords.push_back(c.get_str());
      j["solution"] = coords;
      j["height"] = rep.solution->height;
    } else {
      j["solution"] = nullptr;
      j["search_exhausted"] = true;
    }
  }
  return j.dump(2);
}

AnalysisReport analyze_system(const CubicPairSystem& sys, const RunConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  json j;
  j["tool_version"] = kToolVersion;
  j["config"] = json::parse(config_to_json(cfg));
  j["system"] = json::parse(system_to_json_text(sys));

  // exact box count when the meet-in-the-middle table stays small
  {
    double half_size = std::pow(2.0 * 3.0 + 1.0, (sys.s() + 1) / 2);
    if (half_size <= 1 << 22) {
      CountReport box = count_solutions_box(sys, 3, true);
      j["counts"] = {{"box_P", 3}, {"box", box.exact.get_str()}};
    }
  }

  auto classes = multiplicity_profile(sys);
  json prof = json::array();
  for (const auto& c : classes) {
    json cj;
    cj["representative"] = {c.representative.first, c.representative.second};
    std::vector<int> members1;
    for (int m : c.members) members1.push_back(m + 1);
    cj["members"] = members1;
    cj["multiplicity"] = c.multiplicity();
    prof.push_back(cj);
  }
  j["multiplicity_profile"] = prof;
  j["general_position"] = general_position(sys);

  PadicBudget pb;
  pb.depth_bound = cfg.depth;
  LocalProfile lp = local_profile(sys, cfg.p_bound, pb);
  j["local_profile"] = profile_json(lp);
  bool insoluble_somewhere = false;
  for (const auto& [p, v] : lp.verdicts)
    if (v.verdict == Verdict::Insoluble) insoluble_somewhere = true;

  if (general_position(sys)) {
    j["branch"] = "general-position";
    SeriesBudget sb;
    sb.exact_max = std::max(sb.exact_max, cfg.X_series);
    SingularSeriesTruncation ser = truncated_series(sys, cfg.X_series, sb);
    j["series"] = series_json(ser);
    if (!insoluble_somewhere && sys.s() >= 3) {
      try {
        EchelonResult ech = normalize_pivot_form(sys);
        PositiveKernelPoint kp =
            positive_kernel_point(ech.sys, Rat(static_cast<long>(cfg.eta * 1000), 1000L));
        CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);
        JValue jv = truncated_singular_integral(flipped, cfg.X_integral,
                                                static_cast<double>(cfg.P), cfg.eta);
        PolytopeIntegral poly = polytope_integral(flipped, cfg.eta, cfg.mc_samples, cfg.seed);
        SmoothSet A = smooth_numbers(cfg.P, default_smoothness_bound(cfg.P));
        double rho = static_cast<double>(A.card()) / static_cast<double>(cfg.P);
        json ij;
        ij["J_truncated"] = jv.value;
        ij["J_normalized"] = jv.normalized;
        ij["imag_residue"] = jv.imag_residue;
        ij["J_polytope"] = poly.estimate;
        ij["J_polytope_stderr"] = poly.stderr_estimate;
        ij["rho"] = rho;
        ij["prediction"] =
            std::pow(rho, sys.s() - 1) * ser.value.get_d() * jv.value;
        ij["label"] = "restricted-count main term (smooth box), not the full solution count";
        if (cfg.P <= 6) {
          // desk-scale comparison: the exact count the prediction models
          CountReport rc = smooth_restricted_count(flipped, cfg.P,
                                                   default_smoothness_bound(cfg.P), cfg.eta);
          ij["restricted_count"] = rc.exact.get_str();
        }
        j["integral"] = ij;
      } catch (const Error& e) {
        j["integral"] = {{"error", e.code()}, {"message", e.what()}};
      }
    } else {
      j["prediction_suppressed"] = true;
    }
  } else {
    j["branch"] = "degenerate-split";
    SearchBudget sb;
    PipelineReport rep = hasse_pipeline(sys, cfg.height_cap, cfg.p_bound, pb, sb);
    j["pipeline"] = json::parse(pipeline_to_json(rep));
  }

  j["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  AnalysisReport out;
  out.config = cfg;
  out.json = j.dump(2);
  return out;
}

PlotData emit_plot_data(const std::vector<std::string>& report_jsons) {
  PlotData out;
  std::ostringstream trend, series, chi, jsc;
  trend << "P,R,count,slope,ref_exponent\n";
  series << "q,A_exact,A_float,decay_product\n";
  chi << "p,h,term\n";
  jsc << "P,X,J,J_normalized\n";
  for (const std::string& text : report_jsons) {
    json j = json::parse(text);
    if (j.contains("trend")) {
      for (const auto& row : j["trend"]["rows"])
        trend << row["P"].get<i64>() << "," << row["R"].get<i64>() << ","
              << row["count"].get<std::string>() << "," << row["slope"].get<double>() << ","
              << row["ref_exponent"].get<double>() << "\n";
    }
    if (j.contains("series")) {
      for (const auto& t : j["series"]["terms"]) {
        double af = t.contains("A_float") ? t["A_float"].get<double>() : 0.0;
        u64 q = t["q"].get<u64>();
        series << q << "," << t["A"].get<std::string>() << "," << af << ","
               << std::abs(af) * std::pow(static_cast<double>(q), 4.0 / 3.0) << "\n";
      }
    }
    if (j.contains("chi")) {
      u64 p = j["chi"]["p"].get<u64>();
      int h = 0;
      for (const auto& t : j["chi"]["terms"]) chi << p << "," << h++ << "," << t.get<std::string>() << "\n";
    }
    if (j.contains("integral") && j.contains("config") && !j["integral"].contains("error")) {
      jsc << j["config"]["P"].get<i64>() << "," << j["config"]["X_integral"].get<double>() << ","
          << j["integral"]["J_truncated"].get<double>() << ","
          << j["integral"]["J_normalized"].get<double>() << "\n";
    }
  }
  out.trend_csv = trend.str();
  out.series_csv = series.str();
  out.chi_csv = chi.str();
  out.jscaling_csv = jsc.str();
  return out;
}

}  // namespace dcpair
