#include "dcpair/congruence.hpp"

#include <algorithm>
#include <cmath>

#include "dcpair/errors.hpp"
#include "dcpair/parallel.hpp"

namespace dcpair {

std::vector<u32> cube_multiplicity(u64 q) {
  std::vector<u32> mult(q, 0);
  for (u64 x = 0; x < q; ++x) {
    u64 t = static_cast<u64>(static_cast<u128>(x) * x % q * x % q);
    mult[t] += 1;
  }
  return mult;
}

namespace {

u64 mod_u64(i64 v, u64 q) {
  i64 r = v % static_cast<i64>(q);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

}  // namespace

CongruenceCount count_congruence_fold(const CubicPairSystem& sys, u64 q,
                                      const CongruenceBudget& budget) {
  if (q == 0) throw validation_error("BadModulus", "q must be positive");
  if (q == 1) return {1, Int(1)};
  if (q > budget.max_modulus)
    throw budget_error("BudgetExceeded", "modulus above configured bound");
  if (q * q > budget.max_state_entries)
    throw budget_error("BudgetExceeded", "state space q^2 too large for the fold");

  const int s = sys.s();
  auto mult = cube_multiplicity(q);
  std::vector<std::pair<u64, u32>> cubes;  // (value, multiplicity)
  for (u64 t = 0; t < q; ++t)
    if (mult[t]) cubes.emplace_back(t, mult[t]);

  // The joint distribution mass after folding j variables is q^j; keep the
  // cells in 128-bit lanes while s*log2(q) stays safely below 127 bits,
  // otherwise fall back to bignum cells.
  double bits = s * std::log2(static_cast<double>(q));
  const size_t cells = static_cast<size_t>(q) * q;

  if (bits <= 120.0) {
    std::vector<u128> dist(cells, 0), next(cells);
    dist[0] = 1;
    for (int j = 0; j < s; ++j) {
      std::fill(next.begin(), next.end(), 0);
      u64 aj = mod_u64(sys.a[j], q), bj = mod_u64(sys.b[j], q);
      for (auto [t, m] : cubes) {
        u64 da = static_cast<u64>(static_cast<u128>(aj) * t % q);
        u64 db = static_cast<u64>(static_cast<u128>(bj) * t % q);
        for (u64 u = 0; u < q; ++u) {
          u64 u2 = u + da;
          if (u2 >= q) u2 -= q;
          const u128* src = &dist[u * q];
          u128* dst = &next[u2 * q];
          u64 v2 = db;
          for (u64 v = 0; v < q; ++v) {
            dst[v2] += static_cast<u128>(m) * src[v];
            if (++v2 == q) v2 = 0;
          }
        }
      }
      dist.swap(next);
    }
    u128 m = dist[0];
    Int hi(static_cast<unsigned long>(m >> 64)), lo(static_cast<unsigned long>(m & ~0ull));
    return {q, (hi << 64) + lo};
  }

  std::vector<Int> dist(cells, Int(0)), next(cells);
  dist[0] = 1;
  for (int j = 0; j < s; ++j) {
    for (auto& c : next) c = 0;
    u64 aj = mod_u64(sys.a[j], q), bj = mod_u64(sys.b[j], q);
    for (auto [t, m] : cubes) {
      u64 da = static_cast<u64>(static_cast<u128>(aj) * t % q);
      u64 db = static_cast<u64>(static_cast<u128>(bj) * t % q);
      for (u64 u = 0; u < q; ++u) {
        u64 u2 = (u + da) % q;
        for (u64 v = 0; v < q; ++v) {
          u64 v2 = (v + db) % q;
          next[u2 * q + v2] += static_cast<long>(m) * dist[u * q + v];
        }
      }
    }
    dist.swap(next);
  }
  return {q, dist[0]};
}

CongruenceCount count_congruence_roots(const CubicPairSystem& sys, u64 q,
                                       const CongruenceBudget& budget) {
  if (q == 0) throw validation_error("BadModulus", "q must be positive");
  if (q == 1) return {1, Int(1)};
  if (q > budget.max_modulus)
    throw budget_error("BudgetExceeded", "modulus above configured bound");

  const int s = sys.s();
  const unsigned need_bits = static_cast<unsigned>(s * std::log2(static_cast<double>(q))) + 4;
  std::vector<u64> primes = crt_primes_for_order(q, need_bits);
  auto mult = cube_multiplicity(q);

  std::vector<u64> amod(s), bmod(s);
  for (int j = 0; j < s; ++j) {
    amod[j] = mod_u64(sys.a[j], q);
    bmod[j] = mod_u64(sys.b[j], q);
  }

  std::vector<u64> residues(primes.size());
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    const u64 p = primes[pi];
    Montgomery64 mg(p);

    // omega: element of exact multiplicative order q.
    u64 omega = 0;
    auto qfac = factorize_u64(q);
    for (u64 g = 2;; ++g) {
      u64 cand = pow_mod_u64(g, (p - 1) / q, p);
      if (cand == 1) continue;
      bool exact = true;
      for (auto [r, e] : qfac) {
        (void)e;
        if (pow_mod_u64(cand, q / r, p) == 1) {
          exact = false;
          break;
        }
      }
      if (exact) {
        omega = cand;
        break;
      }
    }

    // Power table and complete cubic exponential sums
    //   S[r] = sum_t mult[t] * omega^{r t}  (all in Montgomery form).
    std::vector<u64> pw(q);
    pw[0] = mg.one;
    u64 om = mg.to_mont(omega);
    for (u64 k = 1; k < q; ++k) pw[k] = mg.mul(pw[k - 1], om);
    std::vector<u64> S(q, 0);
    {
      std::vector<std::pair<u64, u32>> cubes;
      for (u64 t = 0; t < q; ++t)
        if (mult[t]) cubes.emplace_back(t, mult[t]);
      parallel_for(0, q, [&](size_t r) {
        u64 acc = 0;
        for (auto [t, m] : cubes) {
          u64 term = mg.mul(mg.to_mont(m), pw[static_cast<u64>(static_cast<u128>(r) * t % q)]);
          acc = mg.add(acc, term);
        }
        S[r] = acc;
      });
    }

    // sum over (c,d) of prod_j S[(c a_j + d b_j) mod q]
    unsigned workers = thread_count();
    std::vector<u64> partial(workers, 0);
    parallel_for(0, workers, [&](size_t w) {
      u64 acc = 0;
      std::vector<u64> idx(s);
      for (u64 c = w; c < q; c += workers) {
        for (int j = 0; j < s; ++j)
          idx[j] = static_cast<u64>(static_cast<u128>(c) * amod[j] % q);
        for (u64 d = 0; d < q; ++d) {
          u64 prod = mg.one;
          for (int j = 0; j < s; ++j) {
            prod = mg.mul(prod, S[idx[j]]);
            idx[j] += bmod[j];
            if (idx[j] >= q) idx[j] -= q;
          }
          acc = mg.add(acc, prod);
        }
        // idx now holds c a_j + q b_j ≡ c a_j; next c reinitializes anyway.
      }
      partial[w] = acc;
    });
    u64 total = 0;
    for (u64 x : partial) total = mg.add(total, x);
    // divide by q^2
    u64 q2 = mg.to_mont(static_cast<u64>(static_cast<u128>(q) * q % p));
    u64 inv = mg.pow(q2, p - 2);
    residues[pi] = mg.from_mont(mg.mul(total, inv));
  }

  Int m = crt_reconstruct(residues, primes);
  return {q, m};
}

CongruenceCount count_congruence(const CubicPairSystem& sys, u64 q,
                                 const CongruenceBudget& budget) {
  if (q <= budget.fold_max_modulus && q * q <= budget.max_state_entries)
    return count_congruence_fold(sys, q, budget);
  return count_congruence_roots(sys, q, budget);
}

Int count_congruence_exhaustive(const CubicPairSystem& sys, u64 q) {
  const int s = sys.s();
  std::vector<u64> x(s, 0);
  Int count = 0;
  std::vector<u64> cube(q);
  for (u64 v = 0; v < q; ++v) cube[v] = static_cast<u64>(static_cast<u128>(v) * v % q * v % q);
  while (true) {
    u128 sa = 0, sb = 0;
    for (int j = 0; j < s; ++j) {
      sa += static_cast<u128>(mod_u64(sys.a[j], q)) * cube[x[j]];
      sb += static_cast<u128>(mod_u64(sys.b[j], q)) * cube[x[j]];
    }
    if (sa % q == 0 && sb % q == 0) count += 1;
    int i = s - 1;
    while (i >= 0 && x[i] == q - 1) --i;
    if (i < 0) break;
    x[i] += 1;
    for (int j = i + 1; j < s; ++j) x[j] = 0;
  }
  return count;
}

}  // namespace dcpair
