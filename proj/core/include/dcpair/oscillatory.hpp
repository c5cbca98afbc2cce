#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dcpair/system.hpp"

namespace dcpair {

// phi(t) = int_0^1 e(t u^3) du.  Everything else reduces to it:
//   v(theta; P)        = P * phi(theta P^3)
//   w(theta; P, eta)   = P * (phi(t) - eta * phi(t eta^3)),  t = theta P^3.
// Absolute accuracy around 1e-10; see oscillatory.cpp for the regime split.
std::complex<double> phi_kernel(double t);

std::complex<double> kernel_v(double theta, double P);
std::complex<double> kernel_w(double theta, double P, double eta);

// x_j -> -x_j on selected columns (flips[j] = -1).
CubicPairSystem apply_flips(const CubicPairSystem& sys, const std::vector<int>& flips);

struct QuadratureSettings {
  double rel_tol = 1e-6;
  size_t max_panels = 200000;
  double seed_panel = 2.0;  // initial panel edge length
};

// Truncated singular integral over the box [-X P^{-3}, X P^{-3}]^2 of
//   V(xi, zeta) = w(a_1 xi) * prod_{j>=2} v(a_j xi + b_j zeta),
// computed in normalized coordinates (the value scales exactly like
// P^{s-6}).  Requires the pivot-form system with b_1 = a_2 = 0.
struct JValue {
  double value = 0.0;          // real part, includes the P^{s-6} factor
  double normalized = 0.0;     // value / P^{s-6}
  double imag_residue = 0.0;   // imaginary part of the normalized integral
  double error_estimate = 0.0;
  size_t panels = 0;
};

JValue truncated_singular_integral(const CubicPairSystem& sys, double X, double P, double eta,
                                   const QuadratureSettings& settings = {});

// Monte Carlo value of the limiting polytope integral
//   int_{D''} (omega_1 ... omega_s)^{-2/3} d omega_3 ... d omega_s,
// with omega_1, omega_2 solved from the two linear forms and constrained to
// omega_1 in [eta^3, 1], omega_2 in [0, 1].  Free coordinates are drawn
// with density proportional to omega^{-2/3} (u^3 for u uniform), which
// absorbs their share of the singular integrand.
struct PolytopeIntegral {
  u64 samples = 0;
  double estimate = 0.0;
  double stderr_estimate = 0.0;
  u64 seed = 0;
};

PolytopeIntegral polytope_integral(const CubicPairSystem& sys, double eta, u64 samples, u64 seed);

// rho^{s-1} * S(X) * J(X) with rho the empirical smooth density
// card(A(P,R))/P; the restricted-count main term.
struct MainTermPrediction {
  double rho = 0.0;
  double series_value = 0.0;
  double integral_value = 0.0;
  double prediction = 0.0;
};

MainTermPrediction main_term_prediction(const CubicPairSystem& normalized_sys,
                                        const CubicPairSystem& original_sys, double P, double eta,
                                        u64 X_series, double X_integral);

}  // namespace dcpair
