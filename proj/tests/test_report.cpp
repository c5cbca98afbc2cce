#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "dcpair/report.hpp"
#include "fixtures.hpp"

using namespace dcpair;

TEST_CASE("config json round trip") {
  RunConfig cfg;
  cfg.system_json = "{\"a\":[1,2],\"b\":[3,4]}";
  cfg.P = 24;
  cfg.eta = 0.2;
  cfg.X_series = 60;
  cfg.seed = 99;
  RunConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.P == cfg.P);
  CHECK(back.eta == cfg.eta);
  CHECK(back.X_series == cfg.X_series);
  CHECK(back.seed == cfg.seed);
  CHECK(nlohmann::json::parse(back.system_json) == nlohmann::json::parse(cfg.system_json));
}

TEST_CASE("default cutoff floors at desk scale") {
  CHECK(default_cutoff(16.0) == 10.0);
  CHECK(default_cutoff(1e6) == 10.0);  // (log P)^{1/100} stays near 1
}

TEST_CASE("analysis report: exact fields replay bit-identically") {
  std::mt19937_64 rng(151);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 6);
  RunConfig cfg;
  cfg.system_json = system_to_json_text(sys);
  cfg.P = 8;
  cfg.X_series = 20;
  cfg.X_integral = 10.0;
  cfg.p_bound = 5;
  cfg.mc_samples = 20000;

  AnalysisReport r1 = analyze_system(sys, cfg);
  AnalysisReport r2 = analyze_system(sys, cfg);
  auto j1 = nlohmann::json::parse(r1.json), j2 = nlohmann::json::parse(r2.json);
  CHECK(j1["series"] == j2["series"]);
  CHECK(j1["local_profile"] == j2["local_profile"]);
  CHECK(j1["multiplicity_profile"] == j2["multiplicity_profile"]);
  CHECK(j1["general_position"] == j2["general_position"]);
  CHECK(j1["branch"] == "general-position");
  CHECK(j1["tool_version"] == kToolVersion);
  // replay from the embedded config
  RunConfig cfg2 = config_from_json(j1["config"].dump());
  AnalysisReport r3 = analyze_system(system_from_json_text(cfg2.system_json), cfg2);
  CHECK(nlohmann::json::parse(r3.json)["series"] == j1["series"]);
}

TEST_CASE("no float appears in certificate fields") {
  std::mt19937_64 rng(157);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 6);
  RunConfig cfg;
  cfg.system_json = system_to_json_text(sys);
  cfg.X_series = 12;
  cfg.X_integral = 8.0;
  cfg.P = 8;
  cfg.p_bound = 3;
  cfg.mc_samples = 10000;
  auto j = nlohmann::json::parse(analyze_system(sys, cfg).json);
  // exact rationals ride as "num/den" strings
  CHECK(j["series"]["value"].is_string());
  for (const auto& t : j["series"]["terms"]) CHECK(t["A"].is_string());
  for (const auto& [p, v] : j["local_profile"]["verdicts"].items()) {
    if (v.contains("witness"))
      for (const auto& c : v["witness"]["x"]) CHECK(c.is_string());
  }
}

TEST_CASE("analysis report on a degenerate-class system embeds the pipeline") {
  std::mt19937_64 rng(167);
  CubicPairSystem sys = fixtures::random_planted_class(rng, 13, 7, 9);
  RunConfig cfg;
  cfg.system_json = system_to_json_text(sys);
  cfg.p_bound = 3;
  cfg.height_cap = 128;
  auto j = nlohmann::json::parse(analyze_system(sys, cfg).json);
  CHECK(j["branch"] == "degenerate-split");
  CHECK(j["general_position"] == false);
  REQUIRE(j["pipeline"]["solution"].is_array());
  // re-verify the reported solution against the echoed system
  CubicPairSystem echo = system_from_json_text(j["system"].dump());
  std::vector<Int> x;
  for (const auto& c : j["pipeline"]["solution"]) x.emplace_back(c.get<std::string>());
  CHECK(is_exact_solution(echo, x));
  CHECK(j.contains("elapsed_seconds"));
  CHECK(j.contains("counts"));
}

TEST_CASE("plot data: headers and deterministic bytes") {
  std::mt19937_64 rng(163);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 6);
  RunConfig cfg;
  cfg.system_json = system_to_json_text(sys);
  cfg.P = 8;
  cfg.X_series = 10;
  cfg.X_integral = 8.0;
  cfg.p_bound = 3;
  cfg.mc_samples = 10000;
  AnalysisReport rep = analyze_system(sys, cfg);
  PlotData d1 = emit_plot_data({rep.json});
  PlotData d2 = emit_plot_data({rep.json});
  CHECK(d1.series_csv == d2.series_csv);
  CHECK(d1.trend_csv.rfind("P,R,count,slope,ref_exponent\n", 0) == 0);
  CHECK(d1.series_csv.rfind("q,A_exact,A_float,decay_product\n", 0) == 0);
  CHECK(d1.chi_csv.rfind("p,h,term\n", 0) == 0);
  CHECK(d1.series_csv.find("/") != std::string::npos);  // exact rationals as strings
}
