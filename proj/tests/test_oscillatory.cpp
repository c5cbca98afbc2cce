#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dcpair/counting.hpp"
#include "dcpair/oscillatory.hpp"
#include "dcpair/system.hpp"
#include "fixtures.hpp"

using namespace dcpair;

TEST_CASE("kernel endpoint values are exact") {
  for (double P : {1.0, 8.0, 32.0}) {
    CHECK(kernel_v(0.0, P).real() == P);
    CHECK(kernel_v(0.0, P).imag() == 0.0);
    for (double eta : {0.1, 0.25}) {
      CHECK(kernel_w(0.0, P, eta).real() == doctest::Approx((1.0 - eta) * P).epsilon(1e-14));
    }
  }
}

TEST_CASE("kernel conjugate symmetry and modulus bound") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    double t = ((rng() >> 11) * 0x1.0p-53) * 400.0 - 200.0;
    auto a = phi_kernel(t), b = phi_kernel(-t);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
    CHECK(std::abs(a) <= 1.0 + 1e-12);
  }
}

TEST_CASE("kernel decay matches the cube-root law with a small constant") {
  // |v(theta)| <= C P (1 + P^3 |theta|)^{-1/3} -- fit C on a log grid
  double C = 0.0;
  for (double t = 0.01; t < 5000.0; t *= 1.3) {
    double ratio = std::abs(phi_kernel(t)) * std::cbrt(1.0 + t);
    C = std::max(C, ratio);
  }
  CHECK(C <= 3.0);
  CHECK(C >= 0.4);  // the limit constant Gamma(4/3) (2 pi)^{-1/3} is ~0.48
}

TEST_CASE("column flips negate coefficient pairs") {
  CubicPairSystem sys = build_system({1, -2, 3}, {0, 4, -5});
  CubicPairSystem out = apply_flips(sys, {1, -1, 1});
  CHECK(out.a == std::vector<i64>{1, 2, 3});
  CHECK(out.b == std::vector<i64>{0, -4, -5});
  // flipping never changes the box count
  for (i64 P = 1; P <= 3; ++P)
    CHECK(count_solutions_box_direct(sys, P) == count_solutions_box_direct(out, P));
}

TEST_CASE("adaptive J agrees with a brute-force midpoint grid") {
  CubicPairSystem sys = build_system({1, 0, 1}, {0, 1, -1});
  const double eta = 0.1, X = 4.0;
  const int N = 1600;
  const double step = 2 * X / N;
  std::complex<double> acc = 0;
  for (int i = 0; i < N; ++i) {
    double sg = -X + (i + 0.5) * step;
    std::complex<double> w = phi_kernel(sg) - eta * phi_kernel(sg * eta * eta * eta);
    for (int j = 0; j < N; ++j) {
      double ta = -X + (j + 0.5) * step;
      acc += w * phi_kernel(ta) * phi_kernel(sg - ta);
    }
  }
  acc *= step * step;
  JValue jv = truncated_singular_integral(sys, X, 1.0, eta);
  CHECK(jv.normalized == doctest::Approx(acc.real()).epsilon(1e-4));
}

TEST_CASE("scaling: J / P^{s-6} does not depend on P") {
  std::mt19937_64 rng(2025);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  EchelonResult ech = normalize_pivot_form(sys);
  PositiveKernelPoint kp = positive_kernel_point(ech.sys, Rat(1, 10));
  CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);
  double ref = 0.0;
  for (double P : {8.0, 16.0, 32.0}) {
    JValue jv = truncated_singular_integral(flipped, 20.0, P, 0.1);
    double norm = jv.value / std::pow(P, sys.s() - 6);
    if (ref == 0.0)
      ref = norm;
    else
      CHECK(norm == doctest::Approx(ref).epsilon(0.01));
    CHECK(std::abs(jv.imag_residue) <= 1e-6 * std::abs(jv.normalized));
  }
  CHECK(ref > 0.0);
}

TEST_CASE("truncation deltas shrink with the cutoff") {
  CubicPairSystem sys = build_system({2, 0, 1, -1}, {0, 1, 1, 1});
  double j10 = truncated_singular_integral(sys, 10.0, 1.0, 0.1).normalized;
  double j20 = truncated_singular_integral(sys, 20.0, 1.0, 0.1).normalized;
  double j40 = truncated_singular_integral(sys, 40.0, 1.0, 0.1).normalized;
  double d1 = std::abs(j20 - j10), d2 = std::abs(j40 - j20);
  CHECK(d2 <= std::max(d1, 1e-7));
  CHECK(j40 != 0.0);
}

TEST_CASE("polytope integral: positive, reproducible, seeded") {
  std::mt19937_64 rng(2025);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  EchelonResult ech = normalize_pivot_form(sys);
  PositiveKernelPoint kp = positive_kernel_point(ech.sys, Rat(1, 10));
  CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);

  PolytopeIntegral a = polytope_integral(flipped, 0.1, 100000, 42);
  PolytopeIntegral b = polytope_integral(flipped, 0.1, 100000, 42);
  CHECK(a.estimate == b.estimate);  // bit-identical under a fixed seed
  CHECK(a.stderr_estimate == b.stderr_estimate);
  CHECK(a.estimate - 3.0 * a.stderr_estimate > 0.0);

  PolytopeIntegral c = polytope_integral(flipped, 0.1, 200000, 43);
  CHECK(c.estimate - 3.0 * c.stderr_estimate > 0.0);
}

TEST_CASE("ratio of the truncated integral to the polytope value stabilizes") {
  // the limit constant absorbs the eta truncation and the pivot Jacobian;
  // only stability across the cutoff is asserted
  std::mt19937_64 rng(2025);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  EchelonResult ech = normalize_pivot_form(sys);
  PositiveKernelPoint kp = positive_kernel_point(ech.sys, Rat(1, 10));
  CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);
  PolytopeIntegral poly = polytope_integral(flipped, 0.1, 100000, 7);
  double scale = std::pow(3.0, -flipped.s()) * poly.estimate;
  double r1 = truncated_singular_integral(flipped, 15.0, 1.0, 0.1).normalized / scale;
  double r2 = truncated_singular_integral(flipped, 30.0, 1.0, 0.1).normalized / scale;
  CHECK(r1 == doctest::Approx(r2).epsilon(0.02));
}

TEST_CASE("main term prediction composes its factors") {
  std::mt19937_64 rng(2026);
  CubicPairSystem sys = fixtures::random_general_position(rng, 13, 9);
  EchelonResult ech = normalize_pivot_form(sys);
  PositiveKernelPoint kp = positive_kernel_point(ech.sys, Rat(1, 10));
  CubicPairSystem flipped = apply_flips(ech.sys, kp.flips);
  MainTermPrediction mt = main_term_prediction(flipped, sys, 16.0, 0.1, 30, 15.0);
  CHECK(mt.rho > 0.0);
  CHECK(mt.rho <= 1.0);
  CHECK(mt.prediction ==
        doctest::Approx(std::pow(mt.rho, 12) * mt.series_value * mt.integral_value));
  // all computed local densities positive and J positive => prediction positive
  if (mt.series_value > 0 && mt.integral_value > 0) CHECK(mt.prediction > 0);
}
