#pragma once

#include <random>
#include <vector>

#include "dcpair/system.hpp"

namespace fixtures {

using dcpair::CubicPairSystem;
using dcpair::i64;

// Davenport-Lewis 15-variable pair: blocks of
//   Xi = x1^3 + 2 x2^3 + 6 x3^3 - 4 x4^3
//   H  =        x2^3 + 2 x3^3 + 4 x4^3 + x5^3
// scaled by 1, 7, 49.  No nontrivial 7-adic solution.
inline CubicPairSystem davenport_lewis_15() {
  std::vector<i64> xi{1, 2, 6, -4, 0};
  std::vector<i64> eta{0, 1, 2, 4, 1};
  std::vector<i64> a, b;
  for (i64 scale : {1, 7, 49}) {
    for (i64 c : xi) a.push_back(scale * c);
    for (i64 c : eta) b.push_back(scale * c);
  }
  return dcpair::build_system(a, b);
}

// Psi(x1..x6) = (x1^3 - a x2^3) + q (x3^3 - a x4^3) + q^2 (x5^3 - a x6^3)
// with a = 2, q = 7; the pair Psi(x1..x6) = Psi(x7..x12) = 0 has no
// nontrivial 7-adic solution (2 is a cubic non-residue mod 7).
inline CubicPairSystem psi_pair_12() {
  std::vector<i64> psi{1, -2, 7, -14, 49, -98};
  std::vector<i64> a(psi), b(6, 0);
  a.resize(12, 0);
  for (i64 c : psi) b.push_back(c);
  return dcpair::build_system(a, b);
}

// 5 x1^3 + 9 x2^3 + 10 x3^3 + 12 x4^3 = 0 paired with x5^3 + x6^3 + x7^3 = 0.
// The quaternary form is everywhere locally soluble but has no rational
// zero, so the pair is locally soluble at every prime.
inline CubicPairSystem cassels_guy_pair() {
  return dcpair::build_system({5, 9, 10, 12, 0, 0, 0}, {0, 0, 0, 0, 1, 1, 1});
}

// Random system with coefficients in [-bound, bound], no (0,0) pairs.
inline CubicPairSystem random_system(std::mt19937_64& rng, int s, i64 bound) {
  std::vector<i64> a(s), b(s);
  for (int j = 0; j < s; ++j) {
    do {
      a[j] = static_cast<i64>(rng() % (2 * bound + 1)) - bound;
      b[j] = static_cast<i64>(rng() % (2 * bound + 1)) - bound;
    } while (a[j] == 0 && b[j] == 0);
  }
  return dcpair::build_system(a, b);
}

// Random system in general position (max proportionality class <= 5);
// retries until the condition holds.
inline CubicPairSystem random_general_position(std::mt19937_64& rng, int s, i64 bound) {
  while (true) {
    CubicPairSystem sys = random_system(rng, s, bound);
    if (dcpair::general_position(sys)) return sys;
  }
}

// Random system with a planted proportionality class of the given size.
inline CubicPairSystem random_planted_class(std::mt19937_64& rng, int s, int class_size,
                                            i64 bound) {
  std::vector<i64> a(s), b(s);
  i64 g = 0, h = 0;
  while (g == 0 && h == 0) {
    g = static_cast<i64>(rng() % 7) - 3;
    h = static_cast<i64>(rng() % 7) - 3;
  }
  for (int j = 0; j < class_size; ++j) {
    i64 k = 0;
    while (k == 0) k = static_cast<i64>(rng() % 7) - 3;
    a[j] = k * g;
    b[j] = k * h;
  }
  for (int j = class_size; j < s; ++j) {
    do {
      a[j] = static_cast<i64>(rng() % (2 * bound + 1)) - bound;
      b[j] = static_cast<i64>(rng() % (2 * bound + 1)) - bound;
    } while (a[j] == 0 && b[j] == 0);
  }
  return dcpair::build_system(a, b);
}

}  // namespace fixtures
