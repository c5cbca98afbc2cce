#include "dcpair/series.hpp"

#include <cmath>

#include "dcpair/errors.hpp"
#include "dcpair/parallel.hpp"

namespace dcpair {

std::complex<double> cubic_gauss_sum(u64 q, i64 r) {
  if (q == 0) throw validation_error("BadModulus", "q must be positive");
  double re = 0.0, im = 0.0;
  i64 rm = ((r % static_cast<i64>(q)) + static_cast<i64>(q)) % static_cast<i64>(q);
  for (u64 l = 1; l <= q; ++l) {
    u64 c = static_cast<u64>(static_cast<u128>(l) * l % q * l % q);
    double z = static_cast<double>(static_cast<u128>(rm) * c % q) / static_cast<double>(q);
    re += std::cos(2.0 * M_PI * z);
    im += std::sin(2.0 * M_PI * z);
  }
  return {re, im};
}

std::vector<std::complex<double>> gauss_sum_table(u64 q) {
  std::vector<std::complex<double>> root(q), table(q);
  for (u64 k = 0; k < q; ++k) {
    double z = static_cast<double>(k) / static_cast<double>(q);
    root[k] = {std::cos(2.0 * M_PI * z), std::sin(2.0 * M_PI * z)};
  }
  std::vector<u32> mult(q, 0);
  for (u64 x = 0; x < q; ++x) mult[static_cast<u64>(static_cast<u128>(x) * x % q * x % q)] += 1;
  parallel_for(0, q, [&](size_t r) {
    std::complex<double> acc = 0.0;
    for (u64 t = 0; t < q; ++t)
      if (mult[t])
        acc += static_cast<double>(mult[t]) * root[static_cast<u64>(static_cast<u128>(r) * t % q)];
    table[r] = acc;
  });
  return table;
}

const Int& CongruenceMemo::count(u64 q) {
  auto it = memo_.find(q);
  if (it != memo_.end()) return it->second;
  Int m = count_congruence(sys_, q, budget_).count;
  return memo_.emplace(q, std::move(m)).first->second;
}

Rat series_term_exact(const CubicPairSystem& sys, u64 q, CongruenceMemo& memo) {
  // A(q) = sum_{d|q} mu(q/d) d^{2-s} M(d): Moebius inversion of the
  // orthogonality identity sum_{d|q} A(d) = q^{2-s} M(q).
  const int s = sys.s();
  Rat acc(0);
  for (u64 d : divisors_u64(q)) {
    int mu = mobius_u64(q / d);
    if (mu == 0) continue;
    Rat term(memo.count(d), ipow(Int(static_cast<unsigned long>(d)), static_cast<unsigned>(s - 2)));
    term.canonicalize();
    if (mu > 0)
      acc += term;
    else
      acc -= term;
  }
  acc.canonicalize();
  return acc;
}

double series_term_float(const CubicPairSystem& sys, u64 q) {
  const int s = sys.s();
  std::vector<std::complex<double>> S = gauss_sum_table(q);
  std::vector<u64> amod(s), bmod(s);
  for (int j = 0; j < s; ++j) {
    amod[j] = static_cast<u64>(((sys.a[j] % static_cast<i64>(q)) + static_cast<i64>(q)) %
                               static_cast<i64>(q));
    bmod[j] = static_cast<u64>(((sys.b[j] % static_cast<i64>(q)) + static_cast<i64>(q)) %
                               static_cast<i64>(q));
  }
  double qd = static_cast<double>(q);
  double scale = std::pow(qd, -static_cast<double>(s));
  unsigned workers = thread_count();
  std::vector<double> partial(workers, 0.0);
  parallel_for(0, workers, [&](size_t w) {
    double acc = 0.0;
    std::vector<u64> idx(s);
    for (u64 c = w; c < q; c += workers) {
      for (int j = 0; j < s; ++j)
        idx[j] = static_cast<u64>(static_cast<u128>(c) * amod[j] % q);
      for (u64 d = 0; d < q; ++d) {
        if (gcd_i64(gcd_i64(static_cast<i64>(c), static_cast<i64>(d)), static_cast<i64>(q)) ==
            1) {
          std::complex<double> prod = 1.0;
          for (int j = 0; j < s; ++j) prod *= S[idx[j]];
          acc += prod.real();
        }
        for (int j = 0; j < s; ++j) {
          idx[j] += bmod[j];
          if (idx[j] >= q) idx[j] -= q;
        }
      }
    }
    partial[w] = acc;
  });
  double total = 0.0;
  for (double x : partial) total += x;
  return total * scale;
}

SeriesTerm series_term(const CubicPairSystem& sys, u64 q, CongruenceMemo& memo,
                       const SeriesBudget& budget) {
  SeriesTerm t;
  t.q = q;
  t.A = series_term_exact(sys, q, memo);
  if (q <= budget.float_check_max) t.A_float = series_term_float(sys, q);
  return t;
}

SingularSeriesTruncation truncated_series(const CubicPairSystem& sys, u64 X,
                                          const SeriesBudget& budget) {
  if (X < 1) throw validation_error("BadCutoff", "X must be at least 1");
  if (X > budget.exact_max)
    throw budget_error("BudgetExceeded", "exact series cutoff above configured range");
  SingularSeriesTruncation out;
  out.X = X;
  CongruenceMemo memo(sys, budget.congruence);
  Rat sum(0);
  for (u64 q = 1; q <= X; ++q) {
    SeriesTerm t;
    t.q = q;
    t.A = series_term_exact(sys, q, memo);
    if (q <= budget.float_check_max) t.A_float = series_term_float(sys, q);
    sum += t.A;
    out.max_decay_monitor =
        std::max(out.max_decay_monitor,
                 std::abs(t.A.get_d()) * std::pow(static_cast<double>(q), 4.0 / 3.0));
    out.terms.push_back(std::move(t));
  }
  sum.canonicalize();
  out.value = sum;
  return out;
}

std::vector<DecayMonitorRow> series_decay_monitor(const CubicPairSystem& sys, u64 X) {
  std::vector<DecayMonitorRow> rows;
  rows.reserve(X);
  for (u64 q = 1; q <= X; ++q) {
    double a = series_term_float(sys, q);
    rows.push_back({q, a, std::abs(a) * std::pow(static_cast<double>(q), 4.0 / 3.0)});
  }
  return rows;
}

double kappa(u64 q) {
  if (q == 0) throw validation_error("BadModulus", "q must be positive");
  double out = 1.0;
  for (auto [p, e] : factorize_u64(q)) {
    double pd = static_cast<double>(p);
    int l = e / 3;
    switch (e % 3) {
      case 0:
        out *= std::pow(pd, -l);
        break;
      case 1:
        out *= 2.0 * std::pow(pd, -(l + 0.5));
        break;
      default:
        out *= std::pow(pd, -(l + 1.0));
        break;
    }
  }
  return out;
}

}  // namespace dcpair
