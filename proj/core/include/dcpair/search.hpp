#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcpair/padic.hpp"
#include "dcpair/system.hpp"

namespace dcpair {

// A primitive direction (c,d) whose combination c*eq1 + d*eq2 kills at
// least 6 coefficients (equivalently: leaves at most s-6 nonzero).
struct DegenerateDirection {
  i64 c = 0, d = 0;
  std::vector<int> zero_indices;  // 0-based, sorted
  int nonzero_count = 0;
};

std::optional<DegenerateDirection> degenerate_direction(const CubicPairSystem& sys);

// Row-combines and permutes the system into the split shape
//   a_1 x_1^3 + ... + a_s x_s^3 = 0
//                b_{t+1} x_{t+1}^3 + ... + b_s x_s^3 = 0
// with t >= 6 zeros leading the second form.  Solution set preserved.
struct SplitSystem {
  CubicPairSystem sys;
  int t = 0;                 // leading zero count of the second form
  std::vector<int> perm;     // new index -> old index
};

SplitSystem transform_to_split_shape(const CubicPairSystem& sys, const DegenerateDirection& dir);

struct SearchBudget {
  // table entries cost 32 bytes each here, so the default cap is tighter
  // than the raw counting kernels'
  size_t max_table_entries = size_t(1) << 26;
  i64 height_start = 8;
  i64 height_cap = 512;
};

// Nontrivial integer zero of c_1 x_1^3 + ... + c_r x_r^3 with height
// (max-norm) at most H, or nullopt.  Meet in the middle: the smaller half
// is tabulated, the larger half streamed in (shell, lex) order, so the
// returned solution is the first under that deterministic order.
std::optional<std::vector<i64>> solve_single_cubic(const std::vector<i64>& coeffs, i64 H,
                                                   const SearchBudget& budget = {});

struct SolutionVector {
  std::vector<Int> x;
  i64 height = 0;
};

// The split-shape composition: t >= 7 pads a solution of the first form's
// leading block with zeros; t = 6 solves the second form, folds its cubic
// value A into a seven-variable equation A y0^3 + a_1 y1^3 + ... + a_6 y6^3,
// and composes (w_1..w_6, w_0 z_7 .. w_0 z_s).  Output is re-verified
// exactly against both equations before returning.
std::optional<SolutionVector> construct_solution_split(const SplitSystem& split, i64 H,
                                                       const SearchBudget& budget = {});

// Full pipeline: general-position systems take the local-analysis branch
// (profile + prediction inputs); the rest take the constructive branch.
struct PipelineReport {
  std::string branch;  // "general-position" or "degenerate-split"
  bool general_position = false;
  LocalProfile locals;                    // general-position branch
  bool prediction_suppressed = false;     // an Insoluble verdict was found
  std::optional<SolutionVector> solution; // degenerate branch
  std::optional<DegenerateDirection> direction;
  int split_t = 0;
};

PipelineReport hasse_pipeline(const CubicPairSystem& sys, i64 height_cap, u64 p_bound,
                              PadicBudget padic_budget = {}, SearchBudget budget = {});

}  // namespace dcpair
