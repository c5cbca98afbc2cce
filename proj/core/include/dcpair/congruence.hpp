#pragma once

#include <vector>

#include "dcpair/system.hpp"

namespace dcpair {

// M(q) = #{ x in (Z/q)^s : both forms vanish mod q }.  Always >= 1 and
// multiplicative in coprime moduli.
struct CongruenceCount {
  u64 q = 1;
  Int count = 1;
};

struct CongruenceBudget {
  u64 max_modulus = 3000;          // hard precondition bound
  u64 fold_max_modulus = 128;      // DP fold beyond this costs q^3 per variable
  size_t max_state_entries = size_t(1) << 26;
};

// Exact count by dynamic-programming convolution over (Z/q)^2: fold each
// variable's distribution of (a_j x^3, b_j x^3) into the running joint
// distribution.  Exact integer arithmetic throughout (128-bit lanes with
// overflow checks, falling back to bignum).  O(s q^2 D) with D the number
// of distinct cubes mod q.
CongruenceCount count_congruence_fold(const CubicPairSystem& sys, u64 q,
                                      const CongruenceBudget& budget = {});

// Exact count through the orthogonality identity
//   M(q) = q^{-2} sum_{c,d mod q} prod_j S(q, c a_j + d b_j)
// evaluated in Z/pi for several primes pi ≡ 1 (mod q) with an exact q-th
// root of unity, then CRT-reconstructed.  Integer arithmetic only; no
// floating point anywhere.  O(s q^2) per prime.
CongruenceCount count_congruence_roots(const CubicPairSystem& sys, u64 q,
                                       const CongruenceBudget& budget = {});

// Production counter: fold for small q, root-of-unity path beyond.  Both
// paths compute the modulus directly (no CRT over factorizations of q), so
// multiplicativity checks stay meaningful.
CongruenceCount count_congruence(const CubicPairSystem& sys, u64 q,
                                 const CongruenceBudget& budget = {});

// Exhaustive reference counter (test oracle), O(q^s).
Int count_congruence_exhaustive(const CubicPairSystem& sys, u64 q);

// #distinct cube values mod q and their multiplicities.
std::vector<u32> cube_multiplicity(u64 q);

}  // namespace dcpair
