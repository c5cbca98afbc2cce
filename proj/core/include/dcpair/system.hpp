#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dcpair/arith.hpp"

namespace dcpair {

// A pair of simultaneous diagonal cubic equations
//
//   a_1 x_1^3 + ... + a_s x_s^3 = 0
//   b_1 x_1^3 + ... + b_s x_s^3 = 0
//
// in shared variables.  No coefficient pair (a_j, b_j) may vanish entirely.
// Immutable after construction; pure value type.
struct CubicPairSystem {
  std::vector<i64> a;
  std::vector<i64> b;

  int s() const { return static_cast<int>(a.size()); }
};

// Equivalence class of coefficient pairs under rational proportionality.
// Two indices i, j are equivalent iff a_i*b_j - a_j*b_i = 0.  The
// representative is the primitive pair with gcd 1 and the first nonzero
// coordinate positive.
struct LinearFormClass {
  std::pair<i64, i64> representative;
  std::vector<int> members;  // 0-based indices into the system
  int multiplicity() const { return static_cast<int>(members.size()); }
};

// Rational interior point of the kernel {L1 = L2 = 0} after flipping the
// signs of selected coefficient columns (the substitution x_j -> -x_j).
// Every theta_j lies strictly inside (eta, 1).
struct PositiveKernelPoint {
  std::vector<Rat> theta;
  std::vector<int> flips;  // +1 or -1 per coordinate
};

// A 2x2 integer row transform applied to (eq1, eq2), kept for auditability
// together with the coordinate permutation (identity here; the split
// transform in search.hpp permutes).
struct RowTransform {
  i64 m[2][2];  // new_eq_i = m[i][0]*old_eq1 + m[i][1]*old_eq2
};

CubicPairSystem build_system(std::vector<i64> a, std::vector<i64> b);

std::pair<i64, i64> canonical_pair(i64 a, i64 b);

std::vector<LinearFormClass> multiplicity_profile(const CubicPairSystem& sys);

int max_multiplicity(const CubicPairSystem& sys);

// True iff for every (c,d) != (0,0) at least s-5 of the numbers
// c*a_j + d*b_j are nonzero; equivalently max class multiplicity <= 5.
bool general_position(const CubicPairSystem& sys);

// Zero count of the direction (c,d): #{ j : c*a_j + d*b_j = 0 }.  Used by
// the sweep oracle in tests and by the degenerate-direction scan.
int direction_zero_count(const CubicPairSystem& sys, i64 c, i64 d);

// Integral row operations bringing the system to the pivot shape
// b_1 = a_2 = 0 with a_1*b_2 != 0 (relabelling variables so the pivots sit
// in the two largest classes).  Solution set over the integers unchanged.
// Returns the transformed system, the row transform, and the variable
// permutation applied (new index -> old index).
struct EchelonResult {
  CubicPairSystem sys;
  RowTransform rows;
  std::vector<int> perm;
};
EchelonResult normalize_pivot_form(const CubicPairSystem& sys);

// Rational theta in (eta,1)^s with L1(theta) = L2(theta) = 0 after sign
// flips; exact verification before return.  Requires the pivot-form system.
PositiveKernelPoint positive_kernel_point(const CubicPairSystem& sys, const Rat& eta);

// 13 indices (0-based) whose induced max multiplicity is <= 5, chosen
// round-robin across classes in decreasing multiplicity.
std::vector<int> select_core_subset(const CubicPairSystem& sys);

// Exact evaluation helpers used by verification paths.
Int eval_form_a(const CubicPairSystem& sys, const std::vector<Int>& x);
Int eval_form_b(const CubicPairSystem& sys, const std::vector<Int>& x);
bool is_exact_solution(const CubicPairSystem& sys, const std::vector<Int>& x);

// JSON round trip of {"a": [...], "b": [...]}.
CubicPairSystem system_from_json_text(const std::string& text);
std::string system_to_json_text(const CubicPairSystem& sys);
CubicPairSystem system_from_file(const std::string& path);

}  // namespace dcpair
