#include <doctest.h>

#include <cmath>
#include <random>

#include "dcpair/errors.hpp"
#include "dcpair/padic.hpp"
#include "dcpair/series.hpp"
#include "fixtures.hpp"

using namespace dcpair;

TEST_CASE("cubic exponential sums: worked values") {
  CHECK(cubic_gauss_sum(1, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(cubic_gauss_sum(5, 1)) == doctest::Approx(0.0).epsilon(1e-10));
  // cubes mod 7 are 0 once and 1, 6 three times each
  double expect = 1.0 + 6.0 * std::cos(2.0 * M_PI / 7.0);
  CHECK(cubic_gauss_sum(7, 1).real() == doctest::Approx(expect));
  CHECK(cubic_gauss_sum(7, 1).imag() == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(cubic_gauss_sum(12, 0).real() == doctest::Approx(12.0));
}

TEST_CASE("gauss sum table invariants") {
  for (u64 q : {5ull, 7ull, 11ull, 12ull, 49ull}) {
    auto table = gauss_sum_table(q);
    REQUIRE(table.size() == q);
    CHECK(table[0].real() == doctest::Approx(static_cast<double>(q)));
    CHECK(table[0].imag() == doctest::Approx(0.0));
    for (u64 r = 0; r < q; ++r) {
      CHECK(std::abs(table[r]) <= q + 1e-9);
      CHECK(std::abs(table[r] - cubic_gauss_sum(q, static_cast<i64>(r))) < 1e-9);
    }
  }
  // cubing permutes residues mod p for p = 2 (mod 3), so the sums vanish
  for (u64 p : {5ull, 11ull, 17ull}) {
    auto table = gauss_sum_table(p);
    for (u64 r = 1; r < p; ++r) CHECK(std::abs(table[r]) < 1e-9);
  }
}

TEST_CASE("A(1) = 1 and the divisor identity") {
  std::mt19937_64 rng(79);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 20);
  CongruenceMemo memo(sys);
  CHECK(series_term_exact(sys, 1, memo) == Rat(1));

  const int s = sys.s();
  for (u64 q : {2ull, 6ull, 8ull, 12ull, 30ull, 36ull, 49ull, 100ull}) {
    Rat lhs(0);
    for (u64 d : divisors_u64(q)) lhs += series_term_exact(sys, d, memo);
    Rat rhs(memo.count(q), ipow(Int(static_cast<unsigned long>(q)), static_cast<unsigned>(s - 2)));
    rhs.canonicalize();
    lhs.canonicalize();
    CHECK(lhs == rhs);
  }
}

TEST_CASE("A is multiplicative on coprime arguments") {
  std::mt19937_64 rng(83);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 20);
  CongruenceMemo memo(sys);
  for (auto [q1, q2] : std::vector<std::pair<u64, u64>>{
           {2, 3}, {4, 9}, {5, 8}, {7, 9}, {4, 25}, {8, 25}, {3, 49}}) {
    Rat a1 = series_term_exact(sys, q1, memo);
    Rat a2 = series_term_exact(sys, q2, memo);
    Rat a12 = series_term_exact(sys, q1 * q2, memo);
    CHECK(a12 == a1 * a2);
  }
}

TEST_CASE("float path matches the exact path") {
  std::mt19937_64 rng(89);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 20);
  CongruenceMemo memo(sys);
  for (u64 q = 1; q <= 60; ++q) {
    Rat exact = series_term_exact(sys, q, memo);
    double approx = series_term_float(sys, q);
    double scale = std::max(std::abs(exact.get_d()),
                            std::pow(static_cast<double>(q), -4.0 / 3.0));
    CHECK(std::abs(approx - exact.get_d()) <= 1e-6 * scale);
  }
}

TEST_CASE("truncated series basics") {
  std::mt19937_64 rng(97);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 20);
  SeriesBudget budget;
  SingularSeriesTruncation t1 = truncated_series(sys, 1, budget);
  CHECK(t1.value == Rat(1));

  SingularSeriesTruncation t40 = truncated_series(sys, 40, budget);
  CHECK(t40.terms.size() == 40);
  CHECK(t40.value > 0);
  CHECK(t40.max_decay_monitor < 50.0);  // |A(q)| q^{4/3} stays bounded

  // Cauchy-style stabilization: doubling deltas shrink
  SingularSeriesTruncation t10 = truncated_series(sys, 10, budget);
  SingularSeriesTruncation t20 = truncated_series(sys, 20, budget);
  Rat d1 = abs(t20.value - t10.value);
  Rat d2 = abs(t40.value - t20.value);
  CHECK(d2 <= d1);

  SeriesBudget tight;
  tight.exact_max = 10;
  CHECK_THROWS_AS(truncated_series(sys, 50, tight), Error);
}

TEST_CASE("euler product of local densities tracks the series") {
  std::mt19937_64 rng(101);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  SeriesBudget budget;
  SingularSeriesTruncation ser = truncated_series(sys, 100, budget);
  double product = 1.0;
  for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
    ChiSequence chi = chi_p_estimate(sys, p, 2);
    product *= chi.terms.back().get_d();
  }
  CHECK(std::abs(product - ser.value.get_d()) <= 0.05 * std::abs(ser.value.get_d()));
}

TEST_CASE("kappa: defining values and multiplicativity") {
  CHECK(kappa(1) == doctest::Approx(1.0));
  CHECK(kappa(2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(kappa(4) == doctest::Approx(0.5));
  CHECK(kappa(8) == doctest::Approx(0.5));
  CHECK(kappa(27) == doctest::Approx(1.0 / 3.0));
  CHECK(kappa(3) == doctest::Approx(2.0 / std::sqrt(3.0)));
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 40; ++trial) {
    u64 m = 1 + rng() % 200, n = 1 + rng() % 200;
    if (gcd_i64(static_cast<i64>(m), static_cast<i64>(n)) != 1) continue;
    CHECK(kappa(m * n) == doctest::Approx(kappa(m) * kappa(n)));
  }
}

TEST_CASE("decay monitor emits rows on the float path") {
  std::mt19937_64 rng(107);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  auto rows = series_decay_monitor(sys, 30);
  REQUIRE(rows.size() == 30);
  for (const auto& r : rows) CHECK(r.decay_product >= 0.0);
}
