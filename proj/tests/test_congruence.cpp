#include <doctest.h>

#include <random>

#include "dcpair/congruence.hpp"
#include "dcpair/errors.hpp"
#include "fixtures.hpp"

using namespace dcpair;

TEST_CASE("congruence counts: tiny moduli against exhaustive enumeration") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 12; ++trial) {
    int s = 2 + static_cast<int>(rng() % 3);
    CubicPairSystem sys = fixtures::random_system(rng, s, 6);
    for (u64 q = 1; q <= 9; ++q) {
      Int expect = count_congruence_exhaustive(sys, q);
      CHECK(count_congruence_fold(sys, q).count == expect);
      CHECK(count_congruence_roots(sys, q).count == expect);
    }
  }
}

TEST_CASE("worked example: x even forced mod 8") {
  CubicPairSystem sys = build_system({1, 1}, {1, -1});
  CHECK(count_congruence(sys, 8).count == 16);
  CHECK(count_congruence_exhaustive(sys, 8) == 16);
  CHECK(count_congruence(sys, 1).count == 1);
}

TEST_CASE("fold and root-of-unity paths agree on moderate moduli") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    CubicPairSystem sys = fixtures::random_system(rng, 5, 9);
    for (u64 q : {12ull, 27ull, 25ull, 49ull, 60ull}) {
      CHECK(count_congruence_fold(sys, q).count == count_congruence_roots(sys, q).count);
    }
  }
}

TEST_CASE("multiplicativity on coprime moduli") {
  std::mt19937_64 rng(53);
  int done = 0;
  while (done < 50) {
    CubicPairSystem sys = fixtures::random_system(rng, 13, 20);
    u64 q1 = 2 + rng() % 14, q2 = 2 + rng() % 14;
    if (gcd_i64(static_cast<i64>(q1), static_cast<i64>(q2)) != 1) continue;
    ++done;
    Int m1 = count_congruence(sys, q1).count;
    Int m2 = count_congruence(sys, q2).count;
    Int m12 = count_congruence(sys, q1 * q2).count;
    CHECK(m12 == m1 * m2);
  }
}

TEST_CASE("crt check on a fixed pattern: M(6) = M(2) M(3)") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    CubicPairSystem sys = fixtures::random_system(rng, 13, 30);
    CHECK(count_congruence(sys, 6).count ==
          count_congruence(sys, 2).count * count_congruence(sys, 3).count);
  }
}

TEST_CASE("counts are at least one and grow with the state space") {
  std::mt19937_64 rng(61);
  CubicPairSystem sys = fixtures::random_system(rng, 13, 10);
  for (u64 q : {2ull, 5ull, 11ull, 13ull, 49ull}) {
    Int m = count_congruence(sys, q).count;
    CHECK(m >= 1);
  }
}

TEST_CASE("budget guard on the modulus bound") {
  CubicPairSystem sys = build_system({1, 1}, {1, -1});
  CongruenceBudget tight;
  tight.max_modulus = 10;
  CHECK_THROWS_AS(count_congruence(sys, 50, tight), Error);
}
