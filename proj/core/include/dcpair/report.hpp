#pragma once

#include <string>
#include <vector>

#include "dcpair/counting.hpp"
#include "dcpair/oscillatory.hpp"
#include "dcpair/padic.hpp"
#include "dcpair/search.hpp"
#include "dcpair/series.hpp"
#include "dcpair/system.hpp"

namespace dcpair {

inline constexpr const char* kToolVersion = "0.3.0";

// Desk-scale default for the series/integral cutoff: the asymptotic rule
// (log P)^{1/100} floored at 10.
double default_cutoff(double P);

struct RunConfig {
  std::string system_json;  // echo of the system definition
  i64 P = 16;
  double eta = 0.1;
  u64 X_series = 100;
  double X_integral = 50.0;
  u64 p_bound = 50;
  int depth = 0;  // 0 = module default
  i64 height_cap = 512;
  u64 mc_samples = 200000;
  u64 seed = 1;
};

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

// Full analysis of one system: structure, local profile, series, integral,
// prediction, and the pipeline branch.  Exact fields serialize as decimal
// or "num/den" strings so reruns reproduce them byte for byte.
struct AnalysisReport {
  RunConfig config;
  std::string json;  // rendered report
};

AnalysisReport analyze_system(const CubicPairSystem& sys, const RunConfig& cfg);

// JSON renderers used by the CLI subcommands.
std::string count_report_to_json(const CountReport& rep);
std::string local_profile_to_json(const LocalProfile& prof);
std::string chi_sequence_to_json(const ChiSequence& seq);
std::string series_to_json(const SingularSeriesTruncation& ser);
std::string verdict_to_json(const SolubilityVerdict& v);
std::string pipeline_to_json(const PipelineReport& rep);

// Tidy CSV families extracted from stored report JSON files.
struct PlotData {
  std::string trend_csv;       // P,R,count,slope,ref_exponent
  std::string series_csv;      // q,A_exact,A_float,decay_product
  std::string chi_csv;         // p,h,term
  std::string jscaling_csv;    // P,X,J,J_normalized
};

PlotData emit_plot_data(const std::vector<std::string>& report_jsons);

}  // namespace dcpair
