#include "dcpair/padic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

#include "dcpair/errors.hpp"
#include "dcpair/parallel.hpp"

namespace dcpair {

namespace {

int val_p(i64 v, u64 p) {
  if (v == 0) return 0;
  u64 a = static_cast<u64>(v < 0 ? -v : v);
  int e = 0;
  while (a % p == 0) {
    a /= p;
    ++e;
  }
  return e;
}

int val_p_int(const Int& v, u64 p) {
  if (v == 0) return -1;  // callers treat -1 as "identically zero"
  Int a = abs(v), q = static_cast<unsigned long>(p);
  int e = 0;
  while (a % q == 0) {
    a /= q;
    ++e;
  }
  return e;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

// --- candidate tree --------------------------------------------------------
//
// A node fixes, for each variable, its first t_j p-adic digits (value r_j,
// 0 <= r_j < p^{t_j}).  Digits are only assigned once the congruences at
// the current level can see them: the contribution c_j x_j^3 is determined
// mod p^k as soon as v_p(c_j) + prec >= k, where
//     prec = 3 t                 if the known part is 0,
//     prec = t + 2 v_p(r)        otherwise.
// A node at level k therefore stands for every extension of its unassigned
// digits, and all of those extensions satisfy both congruences mod p^k.
// Nodes that can never acquire a unit coordinate are dropped: solutions
// are normalized projectively, so only unit-containing vectors matter.
// If no viable node survives level k, no nontrivial Q_p point exists, and
// k is the exhaustion depth of the certificate.

struct Node {
  std::vector<u64> r;
  std::vector<std::uint8_t> t;

  bool operator==(const Node& o) const { return r == o.r && t == o.t; }
};

struct NodeHash {
  size_t operator()(const Node& n) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (size_t i = 0; i < n.r.size(); ++i) {
      h ^= n.r[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= n.t[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::optional<HenselWitness> hensel_certificate(const CubicPairSystem& sys, u64 p,
                                                const std::vector<u64>& w) {
  const int s = sys.s();
  bool has_unit = false;
  for (int j = 0; j < s; ++j) has_unit |= (w[j] % p != 0);
  if (!has_unit) return std::nullopt;

  std::vector<Int> wi(s);
  for (int j = 0; j < s; ++j) wi[j] = Int(static_cast<unsigned long>(w[j]));
  Int f1 = eval_form_a(sys, wi), f2 = eval_form_b(sys, wi);
  int v1 = val_p_int(f1, p), v2 = val_p_int(f2, p);

  // minor over columns (i,j): 9 (a_i b_j - a_j b_i) w_i^2 w_j^2; the
  // smallest valuation gives the weakest requirement 2v+1.
  int best_v = INT32_MAX, bi = -1, bj = -1;
  for (int i = 0; i < s; ++i) {
    if (w[i] == 0) continue;
    for (int j = i + 1; j < s; ++j) {
      if (w[j] == 0) continue;
      i128 det = static_cast<i128>(sys.a[i]) * sys.b[j] - static_cast<i128>(sys.a[j]) * sys.b[i];
      if (det == 0) continue;
      i64 dd = static_cast<i64>(det > 0 ? det : -det);
      int v = 2 * val_p(3, p) + 2 * val_p(static_cast<i64>(w[i]), p) +
              2 * val_p(static_cast<i64>(w[j]), p) + val_p(dd, p);
      if (v < best_v) {
        best_v = v;
        bi = i;
        bj = j;
      }
    }
  }
  if (bi < 0) return std::nullopt;
  int need = 2 * best_v + 1;
  if ((v1 >= 0 && v1 < need) || (v2 >= 0 && v2 < need)) return std::nullopt;

  HenselWitness cert;
  cert.k = need;
  cert.minor_valuation = best_v;
  cert.col_i = bi;
  cert.col_j = bj;
  Int mod = ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned>(need));
  cert.x.resize(s);
  for (int j = 0; j < s; ++j) cert.x[j] = wi[j] % mod;
  return cert;
}

struct SearchContext {
  const CubicPairSystem& sys;
  u64 p;
  int depth_bound;
  std::vector<int> vmin;  // per-variable valuation of the smaller coefficient
  std::vector<u64> pk;    // p^0..p^depth_bound
  PadicBudget budget;
  size_t visits = 0;

  SearchContext(const CubicPairSystem& s, u64 prime, int depth, PadicBudget b)
      : sys(s), p(prime), depth_bound(depth), budget(b) {
    const int n = sys.s();
    vmin.resize(n);
    for (int j = 0; j < n; ++j) {
      int va = sys.a[j] == 0 ? INT32_MAX : val_p(sys.a[j], p);
      int vb = sys.b[j] == 0 ? INT32_MAX : val_p(sys.b[j], p);
      vmin[j] = std::min(va, vb);
    }
    pk.resize(depth_bound + 1);
    pk[0] = 1;
    for (int k = 1; k <= depth_bound; ++k) pk[k] = pk[k - 1] * p;
  }

  int prec(u64 r, int t) const {
    if (t == 0) return 0;
    if (r == 0) return 3 * t;
    int e = 0;
    while (r % p == 0) {
      r /= p;
      ++e;
    }
    return t + 2 * e;
  }

  bool viable(const Node& n) const {
    for (size_t j = 0; j < n.r.size(); ++j) {
      if (n.t[j] == 0) return true;      // leading digit still open
      if (n.r[j] % p != 0) return true;  // unit coordinate present
    }
    return false;
  }

  bool congruences_hold(const Node& n, int k) const {
    u64 m = pk[k];
    u64 sa = 0, sb = 0;
    for (int j = 0; j < sys.s(); ++j) {
      u64 rm = n.r[j] % m;
      u64 c3 = mulmod(mulmod(rm, rm, m), rm, m);
      u64 am = static_cast<u64>(((sys.a[j] % static_cast<i64>(m)) + static_cast<i64>(m)) %
                                static_cast<i64>(m));
      u64 bm = static_cast<u64>(((sys.b[j] % static_cast<i64>(m)) + static_cast<i64>(m)) %
                                static_cast<i64>(m));
      sa = (sa + mulmod(am, c3, m)) % m;
      sb = (sb + mulmod(bm, c3, m)) % m;
    }
    return sa == 0 && sb == 0;
  }

  // Per-variable digit extensions reaching cube precision `needed`; how
  // many digits that takes depends on the values assigned (a nonzero
  // leading digit yields less precision than a zero one), hence the
  // per-candidate recursion.
  void extend_var(u64 r, int t, int needed, std::vector<std::pair<u64, int>>& out) const {
    if (prec(r, t) >= needed || t >= depth_bound) {
      out.emplace_back(r, t);
      return;
    }
    for (u64 d = 0; d < p; ++d) extend_var(r + d * pk[t], t + 1, needed, out);
  }

  // Enumerates children of `n` at level k in deterministic odometer order,
  // passing each to `fn` (return true to stop).  scan_cap bounds the number
  // of assignments inspected.  Returns true when enumeration was complete.
  template <typename Fn>
  bool visit_children(const Node& n, int k, u64 scan_cap, Fn&& fn) {
    const int s = sys.s();
    std::vector<std::vector<std::pair<u64, int>>> ext(s);
    for (int j = 0; j < s; ++j) {
      int needed = std::max(0, k - vmin[j]);
      extend_var(n.r[j], n.t[j], needed, ext[j]);
    }
    std::vector<size_t> odo(s, 0);
    Node child;
    child.r.resize(s);
    child.t.resize(s);
    u64 scanned = 0;
    while (true) {
      if (scanned++ >= scan_cap) return false;
      for (int j = 0; j < s; ++j) {
        child.r[j] = ext[j][odo[j]].first;
        child.t[j] = static_cast<std::uint8_t>(ext[j][odo[j]].second);
      }
      if (viable(child) && congruences_hold(child, k)) {
        if (fn(child)) return true;
      }
      // odometer ticks the last variable fastest, so sparse candidates
      // (few nonzero coordinates) come first
      int j = s - 1;
      while (j >= 0 && odo[j] + 1 == ext[j].size()) --j;
      if (j < 0) break;
      ++odo[j];
      for (int i = j + 1; i < s; ++i) odo[i] = 0;
    }
    return true;
  }
};

// Deterministic random-tail witness hunt: fix everything except a pivot
// pair with unit determinant, enumerate the pair mod p, Hensel-test hits.
// Finds a certificate for almost every soluble prime at once; ramified
// cases fall through to the tree search.
std::optional<HenselWitness> pivot_pair_prepass(const CubicPairSystem& sys, u64 p, int trials) {
  const int s = sys.s();
  std::vector<std::pair<int, int>> pivots;
  for (int i = 0; i < s && pivots.size() < 24; ++i)
    for (int j = i + 1; j < s && pivots.size() < 24; ++j) {
      i128 det = static_cast<i128>(sys.a[i]) * sys.b[j] - static_cast<i128>(sys.a[j]) * sys.b[i];
      i64 dd = static_cast<i64>(det % static_cast<i128>(p));
      if (dd != 0) pivots.emplace_back(i, j);
    }
  if (pivots.empty()) return std::nullopt;

  std::mt19937_64 rng(0x5eedULL * p + static_cast<u64>(s));
  std::vector<u64> w(s, 0);
  for (int trial = 0; trial < trials; ++trial) {
    auto [pi, pj] = pivots[static_cast<size_t>(trial) % pivots.size()];
    for (int j = 0; j < s; ++j) w[j] = (trial == 0) ? 0 : rng() % p;
    u64 ra = 0, rb = 0;
    for (int j = 0; j < s; ++j) {
      if (j == pi || j == pj) continue;
      u64 c3 = w[j] * w[j] % p * w[j] % p;
      u64 am = static_cast<u64>(((sys.a[j] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                                static_cast<i64>(p));
      u64 bm = static_cast<u64>(((sys.b[j] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                                static_cast<i64>(p));
      ra = (ra + am * c3) % p;
      rb = (rb + bm * c3) % p;
    }
    u64 ai = static_cast<u64>(((sys.a[pi] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                              static_cast<i64>(p));
    u64 bi = static_cast<u64>(((sys.b[pi] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                              static_cast<i64>(p));
    u64 aj = static_cast<u64>(((sys.a[pj] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                              static_cast<i64>(p));
    u64 bj = static_cast<u64>(((sys.b[pj] % static_cast<i64>(p)) + static_cast<i64>(p)) %
                              static_cast<i64>(p));
    for (u64 x = 0; x < p; ++x) {
      u64 x3 = x * x % p * x % p;
      for (u64 y = 0; y < p; ++y) {
        u64 y3 = y * y % p * y % p;
        if ((ra + ai * x3 + aj * y3) % p != 0) continue;
        if ((rb + bi * x3 + bj * y3) % p != 0) continue;
        w[pi] = x;
        w[pj] = y;
        if (auto cert = hensel_certificate(sys, p, w)) return cert;
      }
    }
    w[pi] = w[pj] = 0;
  }
  return std::nullopt;
}

}  // namespace

int default_depth_bound(const CubicPairSystem& sys, u64 p) {
  int vmax = 0;
  for (int j = 0; j < sys.s(); ++j) {
    int v = (sys.a[j] ? val_p(sys.a[j], p) : 0) + (sys.b[j] ? val_p(sys.b[j], p) : 0);
    vmax = std::max(vmax, v);
  }
  int d = 2 * (3 + vmax) + 3;
  if (p == 3) d += 2;
  return d;
}

bool verify_witness(const CubicPairSystem& sys, u64 p, const HenselWitness& w) {
  const int s = sys.s();
  if (static_cast<int>(w.x.size()) != s) return false;
  if (w.k < 2 * w.minor_valuation + 1) return false;
  Int mod = ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned>(w.k));
  bool unit = false;
  for (const Int& c : w.x) {
    if (c < 0 || c >= mod) return false;
    if (c % static_cast<unsigned long>(p) != 0) unit = true;
  }
  if (!unit) return false;
  Int f1 = eval_form_a(sys, w.x) % mod, f2 = eval_form_b(sys, w.x) % mod;
  if (f1 != 0 || f2 != 0) return false;
  Int det = Int(static_cast<long>(sys.a[w.col_i])) * static_cast<long>(sys.b[w.col_j]) -
            Int(static_cast<long>(sys.a[w.col_j])) * static_cast<long>(sys.b[w.col_i]);
  Int minor = Int(9) * det * w.x[w.col_i] * w.x[w.col_i] * w.x[w.col_j] * w.x[w.col_j];
  return val_p_int(minor, p) == w.minor_valuation;
}

SolubilityVerdict padic_soluble(const CubicPairSystem& sys, u64 p, PadicBudget budget) {
  if (p < 2 || !is_prime_u64(p)) throw validation_error("BadPrime", "p must be prime");
  int depth = budget.depth_bound > 0 ? budget.depth_bound : default_depth_bound(sys, p);
  while (depth > 1 && std::log2(static_cast<double>(p)) * depth >= 62.0) --depth;

  SolubilityVerdict out;
  out.p = p;

  if (auto cert = pivot_pair_prepass(sys, p, 200)) {
    out.verdict = Verdict::Soluble;
    out.witness = cert;
    out.depth_reached = cert->k;
    return out;
  }

  SearchContext ctx(sys, p, depth, budget);
  Node root;
  root.r.assign(sys.s(), 0);
  root.t.assign(sys.s(), 0);

  // Phase 1: witness-first depth-first scout; Hensel-tests every candidate
  // it creates, recursing into a bounded number of children per node.
  std::optional<HenselWitness> found;
  {
    struct Frame {
      Node node;
      int k;
    };
    std::vector<Frame> stack{{root, 0}};
    const size_t recurse_cap = 128;
    while (!stack.empty() && !found && ctx.visits < budget.scout_visits) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (f.k >= depth) continue;
      std::vector<Node> keep;
      ctx.visit_children(f.node, f.k + 1, budget.max_branch, [&](const Node& c) {
        ++ctx.visits;
        if (auto cert = hensel_certificate(sys, p, c.r)) {
          found = cert;
          return true;
        }
        if (keep.size() < recurse_cap) keep.push_back(c);
        return ctx.visits >= budget.scout_visits;
      });
      for (auto it = keep.rbegin(); it != keep.rend(); ++it)
        stack.push_back({std::move(*it), f.k + 1});
    }
  }
  if (found) {
    out.verdict = Verdict::Soluble;
    out.witness = found;
    out.depth_reached = found->k;
    return out;
  }

  // Phase 2: exhaustive breadth-first refinement; only this phase may
  // conclude Insoluble.
  std::vector<Node> level{root};
  for (int k = 1; k <= depth; ++k) {
    std::unordered_set<Node, NodeHash> next;
    bool out_of_budget = false;
    for (const Node& n : level) {
      bool complete = ctx.visit_children(n, k, budget.max_branch, [&](const Node& c) {
        if (auto cert = hensel_certificate(sys, p, c.r)) {
          found = cert;
          return true;
        }
        next.insert(c);
        return next.size() > budget.max_states;
      });
      if (found) {
        out.verdict = Verdict::Soluble;
        out.witness = found;
        out.depth_reached = found->k;
        return out;
      }
      if (!complete || next.size() > budget.max_states) {
        out_of_budget = true;
        break;
      }
    }
    if (out_of_budget) {
      out.verdict = Verdict::Unknown;
      out.depth_reached = k - 1;
      return out;
    }
    if (next.empty()) {
      out.verdict = Verdict::Insoluble;
      out.exhaustion_depth = k;
      out.depth_reached = k;
      return out;
    }
    level.assign(next.begin(), next.end());
    std::sort(level.begin(), level.end(), [](const Node& x, const Node& y) {
      return x.r < y.r || (x.r == y.r && x.t < y.t);
    });
  }
  out.verdict = Verdict::Unknown;
  out.depth_reached = depth;
  return out;
}

LocalProfile local_profile(const CubicPairSystem& sys, u64 p_bound, PadicBudget budget) {
  LocalProfile prof;
  std::vector<u64> primes = p_bound >= 2 ? primes_up_to(p_bound) : std::vector<u64>{};
  if (std::find(primes.begin(), primes.end(), 7ull) == primes.end()) primes.push_back(7);
  std::sort(primes.begin(), primes.end());
  std::vector<SolubilityVerdict> verdicts(primes.size());
  parallel_for(0, primes.size(),
               [&](size_t i) { verdicts[i] = padic_soluble(sys, primes[i], budget); });
  for (size_t i = 0; i < primes.size(); ++i) prof.verdicts[primes[i]] = verdicts[i];
  prof.note =
      "primes beyond the bound omitted: nontrivial p-adic solutions exist for every p when "
      "s >= 16 (Davenport-Lewis) and for every p != 7 when 13 <= s <= 15 (Cook)";
  return prof;
}

ChiSequence chi_p_estimate(const CubicPairSystem& sys, u64 p, int h_max,
                           const CongruenceBudget& budget) {
  if (h_max < 1) throw validation_error("BadDepth", "h_max must be at least 1");
  ChiSequence seq;
  seq.p = p;
  seq.terms.push_back(Rat(1));
  const int s = sys.s();
  u64 q = 1;
  for (int h = 1; h <= h_max; ++h) {
    if (q > budget.max_modulus / p)
      throw budget_error("BudgetExceeded", "p^h exceeds the congruence budget");
    q *= p;
    Int m = count_congruence(sys, q, budget).count;
    Rat term;
    if (s >= 2) {
      term = Rat(m, ipow(Int(static_cast<unsigned long>(p)), static_cast<unsigned>(h * (s - 2))));
      term.canonicalize();
    } else {
      term = Rat(m);
    }
    seq.terms.push_back(term);
  }
  size_t n = seq.terms.size();
  seq.stabilized = n >= 2 && seq.terms[n - 1] == seq.terms[n - 2];
  return seq;
}

}  // namespace dcpair
