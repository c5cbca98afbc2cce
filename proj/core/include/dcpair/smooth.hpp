#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "dcpair/arith.hpp"

namespace dcpair {

using cplx = std::complex<double>;

// A(P,R): integers in [1,P] whose prime factors are all <= R.
struct SmoothSet {
  i64 P = 0;
  i64 R = 0;
  std::vector<i64> elements;  // sorted ascending; always contains 1

  i64 card() const { return static_cast<i64>(elements.size()); }
};

SmoothSet smooth_numbers(i64 P, i64 R);

// Default desk-scale smoothness rule R = max(2, floor(P^theta)).
i64 default_smoothness_bound(i64 P, double theta = 2.0 / 3.0);

// e(z) = exp(2*pi*i*z)
cplx unit_e(double z);

// Exponential sum evaluators; all reduce the argument mod 1 first.
//   h(alpha) = sum over A(P,R) of e(alpha x^3)        (smooth Weyl sum)
//   f(alpha) = sum over 1 <= x <= P of e(alpha x^3)   (classical Weyl sum)
//   g(alpha) = sum over eta*P < x <= P of e(alpha x^3)
struct WeylSumEvaluator {
  SmoothSet smooth;
  double eta = 0.0;
  std::vector<double> cubes;  // x^3 for x in A(P,R), as doubles

  explicit WeylSumEvaluator(SmoothSet s, double eta_ = 0.0);

  cplx h(double alpha) const;
  cplx f(double alpha) const;
  cplx g(double alpha) const;
};

// r(n) = #{(x,y) in B^2 : x^3 - y^3 = n}, tabulated on [-P^3, P^3].
// Sparse map representation; r(-n) = r(n) and sum_n r(n) = |B|^2 hold by
// construction.
struct RepFunction {
  std::vector<i64> base;
  i64 P = 0;
  std::map<i64, i64> counts;

  i64 r(i64 n) const {
    auto it = counts.find(n);
    return it == counts.end() ? 0 : it->second;
  }
};

RepFunction rep_function(const std::vector<i64>& B, i64 P);

// Both sides of |sum_{z in B} e(gamma z^3)|^2 = sum_n r(n) e(-gamma n).
cplx rep_identity_lhs(const std::vector<i64>& B, double gamma);
cplx rep_identity_rhs(const RepFunction& rf, double gamma);

}  // namespace dcpair
