#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "dcpair/congruence.hpp"
#include "dcpair/system.hpp"

namespace dcpair {

// S(q,r) = sum_{l=1..q} e(r l^3 / q), direct double-precision summation.
// Cross-check quantity only; certificates never touch it.
std::complex<double> cubic_gauss_sum(u64 q, i64 r);

// All residues at once: table[r] = S(q, r).
std::vector<std::complex<double>> gauss_sum_table(u64 q);

// One term of the singular series.  The exact value comes from Moebius
// inversion of the divisor identity sum_{d|q} A(d) = q^{2-s} M(q); the
// float value recomputes A(q) as sum_{(c,d,q)=1} q^{-s} prod_j S(q, c a_j + d b_j)
// and is attached whenever q <= float_check_max.
struct SeriesTerm {
  u64 q = 1;
  Rat A;
  std::optional<double> A_float;
};

struct SeriesBudget {
  u64 exact_max = 100;        // default exact-term range
  u64 float_check_max = 200;  // Gauss-sum cross-check range
  CongruenceBudget congruence;
};

// Shared memo of congruence counts so divisor sums reuse work.
class CongruenceMemo {
public:
  explicit CongruenceMemo(const CubicPairSystem& sys, CongruenceBudget budget = {})
      : sys_(sys), budget_(budget) {}
  const Int& count(u64 q);

private:
  const CubicPairSystem& sys_;
  CongruenceBudget budget_;
  std::map<u64, Int> memo_;
};

Rat series_term_exact(const CubicPairSystem& sys, u64 q, CongruenceMemo& memo);
SeriesTerm series_term(const CubicPairSystem& sys, u64 q, CongruenceMemo& memo,
                       const SeriesBudget& budget = {});

double series_term_float(const CubicPairSystem& sys, u64 q);

struct SingularSeriesTruncation {
  u64 X = 1;
  Rat value;                       // sum_{q <= X} A(q), exact
  std::vector<SeriesTerm> terms;   // q = 1..X
  double max_decay_monitor = 0.0;  // max over q of |A(q)| q^{4/3}
};

// Exact partial sum; X must stay within budget.exact_max.
SingularSeriesTruncation truncated_series(const CubicPairSystem& sys, u64 X,
                                          const SeriesBudget& budget = {});

// Report-only decay monitor on the float path: rows (q, A_float,
// |A| q^{4/3}).  Usable beyond the exact range.
struct DecayMonitorRow {
  u64 q;
  double A_float;
  double decay_product;
};
std::vector<DecayMonitorRow> series_decay_monitor(const CubicPairSystem& sys, u64 X);

// Multiplicative kernel from the major-arc theory:
//   kappa(p^{3l}) = p^{-l},  kappa(p^{3l+1}) = 2 p^{-l-1/2},  kappa(p^{3l+2}) = p^{-l-1}.
double kappa(u64 q);

}  // namespace dcpair
