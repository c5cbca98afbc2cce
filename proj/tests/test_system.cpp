#include <doctest.h>

#include <random>

#include "dcpair/counting.hpp"
#include "dcpair/errors.hpp"
#include "dcpair/system.hpp"
#include "fixtures.hpp"

using namespace dcpair;

TEST_CASE("build_system validation") {
  CubicPairSystem sys = build_system({1, -1}, {1, 1});
  CHECK(sys.s() == 2);
  CHECK(multiplicity_profile(sys).size() == 2);

  CubicPairSystem prop = build_system({2, 1}, {4, 2});
  auto classes = multiplicity_profile(prop);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].multiplicity() == 2);

  CHECK_THROWS_WITH_AS(build_system({1, 0}, {0, 0}), doctest::Contains("pair 2"), Error);
  CHECK_THROWS_AS(build_system({1, 2, 3}, {1, 2}), Error);
}

TEST_CASE("multiplicity profile ordering and scaling invariance") {
  CubicPairSystem sys = build_system({1, 2, 2}, {1, 2, 3});
  auto classes = multiplicity_profile(sys);
  REQUIRE(classes.size() == 2);
  CHECK(classes[0].members == std::vector<int>{0, 1});
  CHECK(classes[1].members == std::vector<int>{2});

  // scaling any pair by a nonzero integer leaves the partition unchanged
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    CubicPairSystem base = fixtures::random_system(rng, 6, 8);
    CubicPairSystem scaled = base;
    int j = static_cast<int>(rng() % 6);
    i64 k = 1 + static_cast<i64>(rng() % 4);
    scaled.a[j] *= k;
    scaled.b[j] *= k;
    auto c1 = multiplicity_profile(base), c2 = multiplicity_profile(scaled);
    REQUIRE(c1.size() == c2.size());
    for (size_t i = 0; i < c1.size(); ++i) CHECK(c1[i].members == c2[i].members);
  }
}

TEST_CASE("equivalence is a partition (pairwise determinant test)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    CubicPairSystem sys = fixtures::random_system(rng, 8, 5);
    auto classes = multiplicity_profile(sys);
    int total = 0;
    for (const auto& c : classes) {
      total += c.multiplicity();
      for (size_t i = 0; i < c.members.size(); ++i)
        for (size_t j = i + 1; j < c.members.size(); ++j) {
          int u = c.members[i], v = c.members[j];
          CHECK(sys.a[u] * sys.b[v] - sys.a[v] * sys.b[u] == 0);
        }
    }
    CHECK(total == sys.s());
    for (size_t x = 0; x < classes.size(); ++x)
      for (size_t y = x + 1; y < classes.size(); ++y) {
        int u = classes[x].members[0], v = classes[y].members[0];
        CHECK(sys.a[u] * sys.b[v] - sys.a[v] * sys.b[u] != 0);
      }
  }
}

TEST_CASE("davenport-lewis profile: five classes of multiplicity three") {
  CubicPairSystem dl = fixtures::davenport_lewis_15();
  auto classes = multiplicity_profile(dl);
  REQUIRE(classes.size() == 5);
  for (const auto& c : classes) CHECK(c.multiplicity() == 3);
  CHECK(max_multiplicity(dl) == 3);
  CHECK(general_position(dl));
}

TEST_CASE("general position equals the direction sweep") {
  // over directions (b_j, -a_j) the zero count equals the class
  // multiplicity, so the sweep and the profile criterion agree
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    CubicPairSystem sys = fixtures::random_system(rng, 7, 4);
    auto classes = multiplicity_profile(sys);
    int maxmult = 0;
    for (const auto& c : classes) {
      auto [ra, rb] = c.representative;
      CHECK(direction_zero_count(sys, rb, -ra) == c.multiplicity());
      maxmult = std::max(maxmult, c.multiplicity());
    }
    CHECK(general_position(sys) == (maxmult <= 5));
  }
}

TEST_CASE("general position counterexamples") {
  std::vector<i64> a(13), b(13);
  for (int j = 0; j < 13; ++j) {
    a[j] = j + 1;  // 13 pairwise inequivalent forms
    b[j] = 1;
  }
  CHECK(general_position(build_system(a, b)));
  for (int j = 0; j < 6; ++j) {
    a[j] = 2;  // six identical pairs
    b[j] = 3;
  }
  CHECK_FALSE(general_position(build_system(a, b)));
}

TEST_CASE("pivot normalization: already in shape returns identity") {
  CubicPairSystem sys = build_system({1, 0, 2}, {0, 1, 5});
  EchelonResult res = normalize_pivot_form(sys);
  CHECK(res.sys.a == sys.a);
  CHECK(res.sys.b == sys.b);
  CHECK(res.rows.m[0][0] == 1);
  CHECK(res.rows.m[0][1] == 0);
  CHECK(res.rows.m[1][0] == 0);
  CHECK(res.rows.m[1][1] == 1);
  CHECK(res.perm == std::vector<int>{0, 1, 2});
}

TEST_CASE("pivot normalization rejects one-class systems") {
  CHECK_THROWS_WITH_AS(normalize_pivot_form(build_system({1, 2}, {2, 4})),
                       doctest::Contains("single proportionality class"), Error);
}

TEST_CASE("pivot normalization shape and solution-set preservation") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 25) {
    CubicPairSystem sys = fixtures::random_system(rng, 4, 3);
    if (multiplicity_profile(sys).size() < 2) continue;
    ++done;
    EchelonResult res = normalize_pivot_form(sys);
    CHECK(res.sys.b[0] == 0);
    CHECK(res.sys.a[1] == 0);
    CHECK(res.sys.a[0] != 0);
    CHECK(res.sys.b[1] != 0);
    for (i64 P = 1; P <= 3; ++P) {
      Int before = count_solutions_box_direct(sys, P);
      Int after = count_solutions_box_direct(res.sys, P);
      CHECK(before == after);
    }
  }
}

TEST_CASE("positive kernel point: symmetric example") {
  CubicPairSystem sys = build_system({1, -1, 0, 0}, {0, 0, 1, -1});
  EchelonResult res = normalize_pivot_form(sys);
  PositiveKernelPoint kp = positive_kernel_point(res.sys, Rat(1, 4));
  for (const Rat& th : kp.theta) {
    CHECK(th > Rat(1, 4));
    CHECK(th < 1);
  }
  Rat la = 0, lb = 0;
  for (int j = 0; j < res.sys.s(); ++j) {
    la += Rat(kp.flips[j] * res.sys.a[j]) * kp.theta[j];
    lb += Rat(kp.flips[j] * res.sys.b[j]) * kp.theta[j];
  }
  CHECK(la == 0);
  CHECK(lb == 0);
}

TEST_CASE("positive kernel point: trivial kernel rejected") {
  CubicPairSystem sys = build_system({1, 1}, {1, -1});
  EchelonResult res = normalize_pivot_form(sys);
  CHECK_THROWS_WITH_AS(positive_kernel_point(res.sys, Rat(1, 4)),
                       doctest::Contains("trivial"), Error);
}

TEST_CASE("positive kernel point: random 13-variable systems verify exactly") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
    EchelonResult res = normalize_pivot_form(sys);
    PositiveKernelPoint kp = positive_kernel_point(res.sys, Rat(1, 10));
    Rat la = 0, lb = 0;
    for (int j = 0; j < 13; ++j) {
      CHECK(kp.theta[j] > Rat(1, 10));
      CHECK(kp.theta[j] < 1);
      la += Rat(kp.flips[j] * res.sys.a[j]) * kp.theta[j];
      lb += Rat(kp.flips[j] * res.sys.b[j]) * kp.theta[j];
    }
    CHECK(la == 0);
    CHECK(lb == 0);
  }
}

TEST_CASE("core subset selection") {
  {
    std::mt19937_64 rng(41);
    CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
    CHECK(select_core_subset(sys).size() == 13);
  }
  {
    // profile (5,5,5): the subset keeps max multiplicity at 5
    std::vector<i64> a, b;
    for (int c = 1; c <= 3; ++c)
      for (int k = 1; k <= 5; ++k) {
        a.push_back(c);
        b.push_back(c * c + 1);
      }
    CubicPairSystem sys = build_system(a, b);
    auto subset = select_core_subset(sys);
    REQUIRE(subset.size() == 13);
    std::vector<i64> sa, sb;
    for (int idx : subset) {
      sa.push_back(sys.a[idx]);
      sb.push_back(sys.b[idx]);
    }
    CHECK(max_multiplicity(build_system(sa, sb)) <= 5);
  }
  {
    std::vector<i64> a(13, 1), b(13, 2);
    a[12] = 3;  // multiplicity-12 class
    CHECK_THROWS_WITH_AS(select_core_subset(build_system(a, b)),
                         doctest::Contains("multiplicity"), Error);
  }
}

TEST_CASE("json round trip and malformed input") {
  CubicPairSystem dl = fixtures::davenport_lewis_15();
  CubicPairSystem back = system_from_json_text(system_to_json_text(dl));
  CHECK(back.a == dl.a);
  CHECK(back.b == dl.b);
  CHECK_THROWS_AS(system_from_json_text("{\"a\": [1,2"), Error);
  CHECK_THROWS_AS(system_from_json_text("[1,2]"), Error);
}
