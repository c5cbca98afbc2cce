#include "dcpair/smooth.hpp"

#include <cmath>

#include "dcpair/errors.hpp"

namespace dcpair {

SmoothSet smooth_numbers(i64 P, i64 R) {
  if (P < 1 || R < 1 || R > P)
    throw validation_error("BadSmoothRange", "need 1 <= R <= P");
  if (P > (i64(1) << 27))
    throw budget_error("BudgetExceeded", "smooth sieve bound above the supported range");
  // Sieve the largest prime factor up to P, then filter.
  std::vector<i64> lpf(static_cast<size_t>(P) + 1, 0);
  for (i64 i = 2; i <= P; ++i) {
    if (lpf[i] == 0) {
      for (i64 j = i; j <= P; j += i) lpf[j] = i;
    }
  }
  SmoothSet out;
  out.P = P;
  out.R = R;
  out.elements.push_back(1);
  for (i64 n = 2; n <= P; ++n)
    if (lpf[n] <= R) out.elements.push_back(n);
  return out;
}

i64 default_smoothness_bound(i64 P, double theta) {
  // nudge before flooring so exact powers (8^{2/3} = 4) land on the integer
  i64 r = static_cast<i64>(std::floor(std::pow(static_cast<double>(P), theta) + 1e-9));
  r = std::max<i64>(2, r);
  return std::min(r, P);
}

cplx unit_e(double z) {
  double t = z - std::floor(z);
  return {std::cos(2.0 * M_PI * t), std::sin(2.0 * M_PI * t)};
}

WeylSumEvaluator::WeylSumEvaluator(SmoothSet s, double eta_) : smooth(std::move(s)), eta(eta_) {
  cubes.reserve(smooth.elements.size());
  for (i64 x : smooth.elements) cubes.push_back(static_cast<double>(x) * x * x);
}

namespace {

// alpha reduced to [0,1) first; each term reduces alpha*x^3 mod 1 before
// the trig call so the phase never sees a large argument.
cplx sum_over_cubes(double alpha, const double* cubes, size_t n) {
  double a = alpha - std::floor(alpha);
  double re = 0.0, im = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double z = a * cubes[i];
    z -= std::floor(z);
    re += std::cos(2.0 * M_PI * z);
    im += std::sin(2.0 * M_PI * z);
  }
  return {re, im};
}

}  // namespace

cplx WeylSumEvaluator::h(double alpha) const {
  return sum_over_cubes(alpha, cubes.data(), cubes.size());
}

cplx WeylSumEvaluator::f(double alpha) const {
  double a = alpha - std::floor(alpha);
  double re = 0.0, im = 0.0;
  for (i64 x = 1; x <= smooth.P; ++x) {
    double z = a * static_cast<double>(x) * x * x;
    z -= std::floor(z);
    re += std::cos(2.0 * M_PI * z);
    im += std::sin(2.0 * M_PI * z);
  }
  return {re, im};
}

cplx WeylSumEvaluator::g(double alpha) const {
  double a = alpha - std::floor(alpha);
  double re = 0.0, im = 0.0;
  i64 lo = static_cast<i64>(std::floor(eta * static_cast<double>(smooth.P)));
  for (i64 x = lo + 1; x <= smooth.P; ++x) {
    if (static_cast<double>(x) <= eta * static_cast<double>(smooth.P)) continue;
    double z = a * static_cast<double>(x) * x * x;
    z -= std::floor(z);
    re += std::cos(2.0 * M_PI * z);
    im += std::sin(2.0 * M_PI * z);
  }
  return {re, im};
}

RepFunction rep_function(const std::vector<i64>& B, i64 P) {
  for (i64 z : B)
    if (z < 1 || z > P)
      throw validation_error("BadBaseSet", "rep_function: base set must lie in [1,P]");
  RepFunction rf;
  rf.base = B;
  rf.P = P;
  for (i64 x : B)
    for (i64 y : B) rf.counts[x * x * x - y * y * y] += 1;
  return rf;
}

cplx rep_identity_lhs(const std::vector<i64>& B, double gamma) {
  double re = 0.0, im = 0.0;
  for (i64 z : B) {
    double t = gamma * static_cast<double>(z) * z * z;
    t -= std::floor(t);
    re += std::cos(2.0 * M_PI * t);
    im += std::sin(2.0 * M_PI * t);
  }
  cplx s{re, im};
  return s * std::conj(s);
}

cplx rep_identity_rhs(const RepFunction& rf, double gamma) {
  cplx acc = 0.0;
  for (const auto& [n, r] : rf.counts)
    acc += static_cast<double>(r) * unit_e(-gamma * static_cast<double>(n));
  return acc;
}

}  // namespace dcpair
