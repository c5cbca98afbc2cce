#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dcpair/congruence.hpp"
#include "dcpair/system.hpp"

namespace dcpair {

enum class Verdict { Soluble, Insoluble, Unknown };

// Certificate that a solution exists in Z_p^s with a unit coordinate:
// x satisfies both congruences mod p^k, the cited 2x2 Jacobian minor of
// x -> (L1(x^3), L2(x^3)) has valuation v, and k >= 2v+1, which is enough
// for the quantitative two-variable Newton lift.
struct HenselWitness {
  std::vector<Int> x;  // residues mod p^k
  int k = 0;
  int minor_valuation = 0;
  int col_i = 0, col_j = 0;  // columns of the certifying minor (0-based)
};

struct SolubilityVerdict {
  u64 p = 0;
  Verdict verdict = Verdict::Unknown;
  std::optional<HenselWitness> witness;  // Soluble
  int exhaustion_depth = 0;              // Insoluble: no candidate survives this level
  int depth_reached = 0;                 // Unknown / bookkeeping
};

struct PadicBudget {
  int depth_bound = 0;            // 0: use the default rule below
  size_t max_states = 200000;     // BFS states per level
  u64 max_branch = u64(1) << 22;  // candidate assignments per node extension
  size_t scout_visits = 2000000;  // witness-first DFS node budget
};

// 2*(3 + max_j(v_p(a_j) + v_p(b_j))) + 3, p = 3 gets +2; valuations of
// zero coefficients are ignored.
int default_depth_bound(const CubicPairSystem& sys, u64 p);

// Exhaustive refinement over solutions mod p^k restricted to candidates
// with at least one unit coordinate.  A Hensel-certified candidate returns
// Soluble immediately; an emptied tree is Insoluble; budgets exhaust to
// Unknown, never to a guess.
SolubilityVerdict padic_soluble(const CubicPairSystem& sys, u64 p, PadicBudget budget = {});

// Re-derives the certificate claims from scratch; used by tests.
bool verify_witness(const CubicPairSystem& sys, u64 p, const HenselWitness& w);

struct LocalProfile {
  std::map<u64, SolubilityVerdict> verdicts;
  std::string note;  // expectation for primes beyond the computed range
};

// Verdicts for all primes <= p_bound, plus always p = 7.
LocalProfile local_profile(const CubicPairSystem& sys, u64 p_bound, PadicBudget budget = {});

// Terms p^{h(2-s)} M(p^h) for h = 0..h_max as exact rationals (the h = 0
// term is 1 by convention), with a flag recording whether the last two
// terms agree exactly.
struct ChiSequence {
  u64 p = 0;
  std::vector<Rat> terms;
  bool stabilized = false;
};

ChiSequence chi_p_estimate(const CubicPairSystem& sys, u64 p, int h_max,
                           const CongruenceBudget& budget = {});

}  // namespace dcpair
