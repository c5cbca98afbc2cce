#include "dcpair/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dcpair/errors.hpp"
#include "dcpair/parallel.hpp"

namespace dcpair {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

Int int_from_u128(u128 v) {
  Int hi(static_cast<unsigned long>(v >> 64));
  Int lo_hi(static_cast<unsigned long>((v >> 32) & 0xffffffffull));
  Int lo_lo(static_cast<unsigned long>(v & 0xffffffffull));
  return (hi << 64) + (lo_hi << 32) + lo_lo;
}

std::string param_string(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << " ";
    os << k << "=" << v;
    first = false;
  }
  return os.str();
}

}  // namespace

bool pairwise_determinant_condition(const std::array<i64, 3>& c, const std::array<i64, 3>& d) {
  i128 m12 = static_cast<i128>(c[0]) * d[1] - static_cast<i128>(c[1]) * d[0];
  i128 m13 = static_cast<i128>(c[0]) * d[2] - static_cast<i128>(c[2]) * d[0];
  i128 m23 = static_cast<i128>(c[1]) * d[2] - static_cast<i128>(c[2]) * d[1];
  return m12 != 0 && m13 != 0 && m23 != 0;
}

KernelVector kernel_vector(const std::array<i64, 3>& c, const std::array<i64, 3>& d) {
  if (!pairwise_determinant_condition(c, d))
    throw validation_error("ConditionViolated",
                           "a pairwise determinant of the coefficient rows vanishes");
  i64 k1 = c[1] * d[2] - c[2] * d[1];
  i64 k2 = c[2] * d[0] - c[0] * d[2];
  i64 k3 = c[0] * d[1] - c[1] * d[0];
  i64 g = gcd_i64(gcd_i64(k1, k2), k3);
  k1 /= g;
  k2 /= g;
  k3 /= g;
  if (k1 < 0) {
    k1 = -k1;
    k2 = -k2;
    k3 = -k3;
  }
  return {{k1, k2, k3}, g};
}

CountReport sixth_moment_count(i64 P, i64 R, const CountingBudget& budget) {
  double t0 = now_seconds();
  SmoothSet A = smooth_numbers(P, R);
  size_t table_size = static_cast<size_t>(3 * P * P * P + 1);
  if (table_size > budget.max_table_entries)
    throw budget_error("MemoryBudgetExceeded",
                       "three-cube table needs " + std::to_string(table_size) + " entries");
  std::vector<u64> table(table_size, 0);
  for (i64 x : A.elements)
    for (i64 y : A.elements)
      for (i64 z : A.elements) table[static_cast<size_t>(x * x * x + y * y * y + z * z * z)] += 1;
  u128 total = 0;
  for (u64 m : table) total += static_cast<u128>(m) * m;

  CountReport rep;
  rep.quantity = "sixth_moment";
  rep.exact = int_from_u128(total);
  rep.params = param_string({{"P", std::to_string(P)}, {"R", std::to_string(R)}});
  rep.elapsed_seconds = now_seconds() - t0;
  return rep;
}

double moment_quadrature(const SmoothSet& s, int two_k, i64 M) {
  WeylSumEvaluator ev(s);
  // Accumulate |h|^{2k} over the M-point rectangle rule.
  unsigned workers = thread_count();
  std::vector<double> sums(workers, 0.0);
  parallel_for(0, static_cast<size_t>(workers), [&](size_t w) {
    size_t chunk = (static_cast<size_t>(M) + workers - 1) / workers;
    size_t lo = w * chunk, hi = std::min<size_t>(M, lo + chunk);
    double acc = 0.0;
    for (size_t j = lo; j < hi; ++j) {
      double a = static_cast<double>(j) / static_cast<double>(M);
      double m2 = std::norm(ev.h(a));
      double term = 1.0;
      for (int i = 0; i < two_k / 2; ++i) term *= m2;
      acc += term;
    }
    sums[w] = acc;
  });
  double total = std::accumulate(sums.begin(), sums.end(), 0.0);
  return total / static_cast<double>(M);
}

std::vector<i64> cube_difference_table(const SmoothSet& s, int k, const CountingBudget& budget) {
  // Dense table of sums of k cubes over A, then the autocorrelation gives
  // representation counts of differences.
  i64 top = k * s.P * s.P * s.P;
  if (static_cast<size_t>(2 * top + 1) > budget.max_table_entries)
    throw budget_error("MemoryBudgetExceeded", "cube difference table too large");
  // representation counts reach |A|^{2k}; keep them inside i64
  if (2.0 * k * std::log2(static_cast<double>(s.card())) >= 62.0)
    throw budget_error("MemoryBudgetExceeded", "representation counts would overflow");
  std::vector<i64> sums(static_cast<size_t>(top) + 1, 0);
  sums[0] = 1;  // empty sum
  i64 reach = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<i64> next(static_cast<size_t>(top) + 1, 0);
    for (i64 v = 0; v <= reach; ++v) {
      if (sums[v] == 0) continue;
      for (i64 x : s.elements) {
        i64 w = v + x * x * x;
        if (w <= top) next[w] += sums[v];
      }
    }
    reach = std::min<i64>(top, reach + s.P * s.P * s.P);
    sums.swap(next);
  }
  std::vector<i64> rho(static_cast<size_t>(2 * top) + 1, 0);
  for (i64 u = 0; u <= top; ++u) {
    if (sums[u] == 0) continue;
    for (i64 w = 0; w <= top; ++w) {
      if (sums[w] == 0) continue;
      rho[static_cast<size_t>(u - w + top)] += sums[u] * sums[w];
    }
  }
  return rho;
}

CountReport even_moment_pair_count(const std::array<i64, 3>& c, const std::array<i64, 3>& d,
                                   const std::array<int, 3>& e, i64 P, i64 R,
                                   const CountingBudget& budget) {
  double t0 = now_seconds();
  for (int ei : e)
    if (ei <= 0 || ei % 2 != 0)
      throw validation_error("BadExponents", "exponents must be positive even integers");
  if (e[0] + e[1] + e[2] > 16)
    throw validation_error("BadExponents", "exponent sum above 16 is not supported");
  KernelVector kv = kernel_vector(c, d);

  SmoothSet A = smooth_numbers(P, R);
  i64 top[3];
  std::vector<i64> rho[3];
  for (int i = 0; i < 3; ++i) {
    rho[i] = cube_difference_table(A, e[i] / 2, budget);
    top[i] = (e[i] / 2) * P * P * P;
  }
  i64 tmax = top[0] / std::abs(kv.k[0]);
  tmax = std::min(tmax, top[1] / std::abs(kv.k[1]));
  tmax = std::min(tmax, top[2] / std::abs(kv.k[2]));

  u128 total = 0;
  for (i64 t = -tmax; t <= tmax; ++t) {
    u128 prod = 1;
    for (int i = 0; i < 3; ++i) {
      i64 n = t * kv.k[i];
      prod *= static_cast<u128>(rho[i][static_cast<size_t>(n + top[i])]);
      if (prod == 0) break;
    }
    total += prod;
  }

  CountReport rep;
  rep.quantity = "even_moment_pair";
  rep.exact = int_from_u128(total);
  rep.params = param_string({{"P", std::to_string(P)},
                             {"R", std::to_string(R)},
                             {"e", std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
                                       std::to_string(e[2])}});
  rep.elapsed_seconds = now_seconds() - t0;
  return rep;
}

Int even_moment_pair_oracle(const std::array<i64, 3>& c, const std::array<i64, 3>& d,
                            const std::array<int, 3>& e, i64 P, i64 R) {
  if (!pairwise_determinant_condition(c, d))
    throw validation_error("ConditionViolated", "oracle requires the determinant condition");
  SmoothSet A = smooth_numbers(P, R);
  CountingBudget budget;
  i64 top[3];
  std::vector<i64> rho[3];
  for (int i = 0; i < 3; ++i) {
    rho[i] = cube_difference_table(A, e[i] / 2, budget);
    top[i] = (e[i] / 2) * P * P * P;
  }
  // Solve for n3 from whichever equation has a nonzero third coefficient,
  // then check the other one.
  bool use_c = c[2] != 0;
  Int total = 0;
  for (i64 n1 = -top[0]; n1 <= top[0]; ++n1) {
    if (rho[0][static_cast<size_t>(n1 + top[0])] == 0) continue;
    for (i64 n2 = -top[1]; n2 <= top[1]; ++n2) {
      i64 r2v = rho[1][static_cast<size_t>(n2 + top[1])];
      if (r2v == 0) continue;
      i128 num = use_c ? -(static_cast<i128>(c[0]) * n1 + static_cast<i128>(c[1]) * n2)
                       : -(static_cast<i128>(d[0]) * n1 + static_cast<i128>(d[1]) * n2);
      i64 den = use_c ? c[2] : d[2];
      if (num % den != 0) continue;
      i128 n3w = num / den;
      if (n3w < -top[2] || n3w > top[2]) continue;
      i64 n3 = static_cast<i64>(n3w);
      // the other equation
      i128 other = use_c ? static_cast<i128>(d[0]) * n1 + static_cast<i128>(d[1]) * n2 +
                               static_cast<i128>(d[2]) * n3
                         : static_cast<i128>(c[0]) * n1 + static_cast<i128>(c[1]) * n2 +
                               static_cast<i128>(c[2]) * n3;
      if (other != 0) continue;
      i64 r1v = rho[0][static_cast<size_t>(n1 + top[0])];
      i64 r3v = rho[2][static_cast<size_t>(n3 + top[2])];
      total += Int(static_cast<long>(r1v)) * Int(static_cast<long>(r2v)) *
               Int(static_cast<long>(r3v));
    }
  }
  return total;
}

namespace {

struct HalfEnumeration {
  std::vector<u64> keys;  // packed (sum_a, sum_b), sorted after build
};

// Packs value pairs with offsets wide enough that negation stays in range.
struct KeyPacker {
  i64 off_a = 0, off_b = 0;
  u64 stride = 0;
  u64 pack(i64 sa, i64 sb) const {
    return static_cast<u64>(sa + off_a) * stride + static_cast<u64>(sb + off_b);
  }
};

void enumerate_half(const CubicPairSystem& sys, int lo, int hi, i64 P, const KeyPacker& pk,
                    std::vector<u64>& out) {
  // Iterative odometer over x_lo..x_{hi-1} in [-P, P] with running sums.
  int n = hi - lo;
  std::vector<i64> x(n, -P);
  std::vector<i64> cube(n);
  auto cube_of = [](i64 v) { return v * v * v; };
  std::vector<i64> sa(n + 1, 0), sb(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    cube[i] = cube_of(-P);
    sa[i + 1] = sa[i] + sys.a[lo + i] * cube[i];
    sb[i + 1] = sb[i] + sys.b[lo + i] * cube[i];
  }
  while (true) {
    out.push_back(pk.pack(sa[n], sb[n]));
    int i = n - 1;
    while (i >= 0 && x[i] == P) --i;
    if (i < 0) break;
    x[i] += 1;
    cube[i] = cube_of(x[i]);
    for (int j = i; j < n; ++j) {
      if (j > i) {
        x[j] = -P;
        cube[j] = cube_of(-P);
      }
      sa[j + 1] = sa[j] + sys.a[lo + j] * cube[j];
      sb[j + 1] = sb[j] + sys.b[lo + j] * cube[j];
    }
  }
}

}  // namespace

CountReport count_solutions_box(const CubicPairSystem& sys, i64 P, bool include_trivial,
                                const CountingBudget& budget) {
  double t0 = now_seconds();
  const int s = sys.s();
  const int half = (s + 1) / 2;

  double est = std::pow(2.0 * static_cast<double>(P) + 1.0, half);
  if (est > static_cast<double>(budget.max_table_entries))
    throw budget_error("BudgetExceeded",
                       "meet-in-the-middle table would need about " +
                           std::to_string(static_cast<double>(est)) + " entries");

  i64 bound_a = 0, bound_b = 0;
  for (int j = 0; j < s; ++j) {
    bound_a += std::abs(sys.a[j]) * P * P * P;
    bound_b += std::abs(sys.b[j]) * P * P * P;
  }
  i128 span = (static_cast<i128>(2) * bound_a + 1) * (static_cast<i128>(2) * bound_b + 1);
  if (span > static_cast<i128>(INT64_MAX))
    throw budget_error("BudgetExceeded", "value range does not fit the packed key");
  KeyPacker pk{bound_a, bound_b, static_cast<u64>(2 * bound_b + 1)};

  std::vector<u64> first, second;
  first.reserve(static_cast<size_t>(est));
  enumerate_half(sys, 0, half, P, pk, first);
  enumerate_half(sys, half, s, P, pk, second);
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());

  // match key1 == pack(-sa2, -sb2); both lists sorted, walk them in step.
  u128 total = 0;
  size_t i = 0;
  const u64 mirror = pk.pack(0, 0) * 2;  // pack(-x) = mirror - pack(x)
  // iterate second descending so mirrored keys ascend
  size_t j = second.size();
  while (i < first.size() && j > 0) {
    u64 want = mirror - second[j - 1];
    while (i < first.size() && first[i] < want) ++i;
    if (i == first.size()) break;
    if (first[i] > want) {
      --j;
      continue;
    }
    size_t i2 = i;
    while (i2 < first.size() && first[i2] == want) ++i2;
    size_t j2 = j;
    while (j2 > 0 && second[j2 - 1] == second[j - 1]) --j2;
    total += static_cast<u128>(i2 - i) * static_cast<u128>(j - j2);
    i = i2;
    j = j2;
  }

  Int exact = int_from_u128(total);
  if (!include_trivial) exact -= 1;

  CountReport rep;
  rep.quantity = "N(P)";
  rep.exact = exact;
  rep.params = param_string({{"P", std::to_string(P)},
                             {"s", std::to_string(s)},
                             {"include_trivial", include_trivial ? "true" : "false"}});
  rep.elapsed_seconds = now_seconds() - t0;
  return rep;
}

namespace {

// odometer over per-variable domains, pushing packed keys
void enumerate_domains(const CubicPairSystem& sys, int lo, int hi,
                       const std::vector<std::vector<i64>>& domains, const KeyPacker& pk,
                       std::vector<u64>& out) {
  int n = hi - lo;
  std::vector<size_t> idx(n, 0);
  while (true) {
    i64 sa = 0, sb = 0;
    for (int i = 0; i < n; ++i) {
      i64 v = domains[lo + i][idx[i]];
      sa += sys.a[lo + i] * v * v * v;
      sb += sys.b[lo + i] * v * v * v;
    }
    out.push_back(pk.pack(sa, sb));
    int i = n - 1;
    while (i >= 0 && idx[i] + 1 == domains[lo + i].size()) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = 0;
  }
}

}  // namespace

CountReport smooth_restricted_count(const CubicPairSystem& sys, i64 P, i64 R, double eta,
                                    const CountingBudget& budget) {
  double t0 = now_seconds();
  const int s = sys.s();
  SmoothSet A = smooth_numbers(P, R);
  std::vector<std::vector<i64>> domains(s);
  for (i64 x = 1; x <= P; ++x)
    if (static_cast<double>(x) > eta * static_cast<double>(P)) domains[0].push_back(x);
  if (domains[0].empty())
    throw validation_error("BadParams", "the range (eta P, P] holds no integers");
  for (int j = 1; j < s; ++j) domains[j] = A.elements;

  const int half = (s + 1) / 2;
  double est = 1.0;
  for (int j = 0; j < half; ++j) est *= static_cast<double>(domains[j].size());
  if (est > static_cast<double>(budget.max_table_entries))
    throw budget_error("BudgetExceeded", "restricted-count table too large");

  i64 bound_a = 0, bound_b = 0;
  for (int j = 0; j < s; ++j) {
    bound_a += std::abs(sys.a[j]) * P * P * P;
    bound_b += std::abs(sys.b[j]) * P * P * P;
  }
  KeyPacker pk{bound_a, bound_b, static_cast<u64>(2 * bound_b + 1)};
  std::vector<u64> first, second;
  enumerate_domains(sys, 0, half, domains, pk, first);
  enumerate_domains(sys, half, s, domains, pk, second);
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());

  const u64 mirror = pk.pack(0, 0) * 2;
  u128 total = 0;
  size_t i = 0, j = second.size();
  while (i < first.size() && j > 0) {
    u64 want = mirror - second[j - 1];
    while (i < first.size() && first[i] < want) ++i;
    if (i == first.size()) break;
    if (first[i] > want) {
      --j;
      continue;
    }
    size_t i2 = i;
    while (i2 < first.size() && first[i2] == want) ++i2;
    size_t j2 = j;
    while (j2 > 0 && second[j2 - 1] == second[j - 1]) --j2;
    total += static_cast<u128>(i2 - i) * static_cast<u128>(j - j2);
    i = i2;
    j = j2;
  }

  CountReport rep;
  rep.quantity = "restricted_smooth_count";
  rep.exact = int_from_u128(total);
  rep.params = param_string({{"P", std::to_string(P)},
                             {"R", std::to_string(R)},
                             {"eta", std::to_string(eta)}});
  rep.elapsed_seconds = now_seconds() - t0;
  return rep;
}

Int count_solutions_box_direct(const CubicPairSystem& sys, i64 P) {
  const int s = sys.s();
  std::vector<i64> x(s, -P);
  Int count = 0;
  while (true) {
    i128 sa = 0, sb = 0;
    for (int j = 0; j < s; ++j) {
      i128 c = static_cast<i128>(x[j]) * x[j] * x[j];
      sa += sys.a[j] * c;
      sb += sys.b[j] * c;
    }
    if (sa == 0 && sb == 0) count += 1;
    int i = s - 1;
    while (i >= 0 && x[i] == P) --i;
    if (i < 0) break;
    x[i] += 1;
    for (int j = i + 1; j < s; ++j) x[j] = -P;
  }
  return count;
}

Int quadrature_box_count_oracle(const CubicPairSystem& sys, i64 P, i64 M1, i64 M2,
                                const CountingBudget& budget) {
  const int s = sys.s();
  i64 suma = 0, sumb = 0;
  for (int j = 0; j < s; ++j) {
    suma += std::abs(sys.a[j]);
    sumb += std::abs(sys.b[j]);
  }
  i64 need1 = 2 * suma * P * P * P, need2 = 2 * sumb * P * P * P;
  if (M1 == 0) M1 = need1 + 1;
  if (M2 == 0) M2 = need2 + 1;
  if (M1 <= need1 || M2 <= need2)
    throw validation_error("GridTooCoarse",
                           "rectangle grid below the trigonometric degree bound");
  if (static_cast<double>(M1) * static_cast<double>(M2) >
      static_cast<double>(budget.max_table_entries))
    throw budget_error("BudgetExceeded", "quadrature grid too large");

  std::vector<double> sums(thread_count(), 0.0);
  unsigned workers = thread_count();
  parallel_for(0, workers, [&](size_t w) {
    double acc = 0.0;
    for (i64 k1 = static_cast<i64>(w); k1 < M1; k1 += workers) {
      double al = static_cast<double>(k1) / static_cast<double>(M1);
      for (i64 k2 = 0; k2 < M2; ++k2) {
        double be = static_cast<double>(k2) / static_cast<double>(M2);
        double prod = 1.0;
        for (int j = 0; j < s; ++j) {
          double gamma = sys.a[j] * al + sys.b[j] * be;
          gamma -= std::floor(gamma);
          double fj = 1.0;
          for (i64 x = 1; x <= P; ++x) {
            double z = gamma * static_cast<double>(x) * x * x;
            z -= std::floor(z);
            fj += 2.0 * std::cos(2.0 * M_PI * z);
          }
          prod *= fj;
        }
        acc += prod;
      }
    }
    sums[w] = acc;
  });
  double total = std::accumulate(sums.begin(), sums.end(), 0.0) /
                 (static_cast<double>(M1) * static_cast<double>(M2));
  double rounded = std::round(total);
  return Int(static_cast<long>(rounded));
}

PsiValue fourier_psi(i64 ell, i64 m, const SmoothSet& s, i64 M) {
  if (ell == 0) throw validation_error("BadPsiIndex", "ell must be nonzero");
  WeylSumEvaluator ev(s);
  auto eval_at = [&](i64 nodes) {
    std::vector<double> tab(static_cast<size_t>(nodes));
    for (i64 j = 0; j < nodes; ++j) {
      double a = static_cast<double>(j) / static_cast<double>(nodes);
      double mag = std::abs(ev.h(a));
      tab[static_cast<size_t>(j)] = mag * mag * mag * mag * mag;
    }
    // |h(ell*alpha)| at alpha = k/nodes equals the table at (ell*k mod nodes).
    double re = 0.0, im = 0.0;
    i64 lred = ((ell % nodes) + nodes) % nodes;
    i64 idx = 0;
    for (i64 k = 0; k < nodes; ++k) {
      double w = tab[static_cast<size_t>(idx)];
      double ph = -static_cast<double>(m) * static_cast<double>(k) / static_cast<double>(nodes);
      ph -= std::floor(ph);
      re += w * std::cos(2.0 * M_PI * ph);
      im += w * std::sin(2.0 * M_PI * ph);
      idx += lred;
      if (idx >= nodes) idx -= nodes;
    }
    return cplx{re / nodes, im / nodes};
  };
  cplx v1 = eval_at(M);
  cplx v2 = eval_at(2 * M);
  PsiValue out;
  out.value = v1.real();
  out.imag_residue = v1.imag();
  out.convergence_delta = std::abs(v1.real() - v2.real());
  return out;
}

double mixed_mean_value_quadrature(i64 a, i64 b, i64 c, i64 d, const SmoothSet& s,
                                   const std::vector<i64>& B, i64 M1, i64 M2) {
  WeylSumEvaluator ev(s);
  auto h5_table = [&](i64 nodes) {
    std::vector<double> tab(static_cast<size_t>(nodes));
    for (i64 j = 0; j < nodes; ++j) {
      double mag = std::abs(ev.h(static_cast<double>(j) / static_cast<double>(nodes)));
      tab[static_cast<size_t>(j)] = mag * mag * mag * mag * mag;
    }
    return tab;
  };
  std::vector<double> t1 = h5_table(M1), t2 = h5_table(M2);
  // e((c alpha + d beta) z^3) factorises over the grid axes.
  std::vector<std::vector<cplx>> u1(B.size(), std::vector<cplx>(static_cast<size_t>(M1)));
  std::vector<std::vector<cplx>> u2(B.size(), std::vector<cplx>(static_cast<size_t>(M2)));
  for (size_t zi = 0; zi < B.size(); ++zi) {
    double z3 = static_cast<double>(B[zi]) * B[zi] * B[zi];
    for (i64 k = 0; k < M1; ++k)
      u1[zi][static_cast<size_t>(k)] = unit_e(c * z3 * k / static_cast<double>(M1));
    for (i64 k = 0; k < M2; ++k)
      u2[zi][static_cast<size_t>(k)] = unit_e(d * z3 * k / static_cast<double>(M2));
  }
  i64 ar = ((a % M1) + M1) % M1, br = ((b % M2) + M2) % M2;
  double total = 0.0;
  for (i64 k1 = 0; k1 < M1; ++k1) {
    double w1 = t1[static_cast<size_t>((ar * k1) % M1)];
    if (w1 == 0.0) continue;
    for (i64 k2 = 0; k2 < M2; ++k2) {
      double w2 = t2[static_cast<size_t>((br * k2) % M2)];
      cplx sum = 0.0;
      for (size_t zi = 0; zi < B.size(); ++zi)
        sum += u1[zi][static_cast<size_t>(k1)] * u2[zi][static_cast<size_t>(k2)];
      total += w1 * w2 * std::norm(sum);
    }
  }
  return total / (static_cast<double>(M1) * static_cast<double>(M2));
}

double admissible_exponent_xi() { return (std::sqrt(2833.0) - 43.0) / 41.0; }

TrendReport moment_trend_report(TrendKind kind, const std::vector<i64>& Ps, double r_theta,
                                const EvenPairParams& params, double slack,
                                const CountingBudget& budget) {
  TrendReport rep;
  rep.xi = admissible_exponent_xi();
  double ref = (kind == TrendKind::Sixth ? 3.0 : 6.0) + rep.xi;
  for (i64 P : Ps) {
    i64 R = default_smoothness_bound(P, r_theta);
    TrendRow row;
    row.P = P;
    row.R = R;
    if (kind == TrendKind::Sixth) {
      row.count = sixth_moment_count(P, R, budget).exact;
    } else {
      row.count = even_moment_pair_count(params.c, params.d, params.e, P, R, budget).exact;
    }
    row.ref_exponent = ref;
    rep.rows.push_back(row);
  }
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    double c0 = mpz_get_d(rep.rows[i - 1].count.get_mpz_t());
    double c1 = mpz_get_d(rep.rows[i].count.get_mpz_t());
    double lp0 = std::log(static_cast<double>(rep.rows[i - 1].P));
    double lp1 = std::log(static_cast<double>(rep.rows[i].P));
    rep.rows[i].slope = (std::log(c1) - std::log(c0)) / (lp1 - lp0);
    if (rep.rows[i].slope > ref + slack) rep.flagged_P.push_back(rep.rows[i].P);
  }
  // least squares on (log P, log count)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  size_t n = rep.rows.size();
  for (const auto& r : rep.rows) {
    double x = std::log(static_cast<double>(r.P));
    double y = std::log(mpz_get_d(r.count.get_mpz_t()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (n >= 2) rep.lsq_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

std::string trend_to_csv(const TrendReport& t) {
  std::ostringstream os;
  os << "P,R,count,slope,ref_exponent\n";
  for (const auto& r : t.rows) {
    os << r.P << "," << r.R << "," << r.count.get_str() << ",";
    os.precision(10);
    os << r.slope << "," << r.ref_exponent << "\n";
  }
  return os.str();
}

}  // namespace dcpair
