#include "dcpair/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "dcpair/errors.hpp"
#include "dcpair/parallel.hpp"
#include "dcpair/series.hpp"
#include "dcpair/smooth.hpp"

namespace dcpair {

namespace {

using cd = std::complex<double>;

constexpr double kGamma43 = 0.89297951156924921122;  // Gamma(4/3)
constexpr double kTableTop = 6.5;
constexpr double kAsymSwitch = 6.0;
constexpr int kTableN = 1665;  // step ~ 1/256

// Direct panel evaluation of int_0^1 u^m e^{i beta u^3} du with enough
// Gauss points per unit phase; only used to build the reference table.
cd panel_integral(double beta, int m) {
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  int n = std::max(8, static_cast<int>(std::ceil(3.0 * std::abs(beta) / 1.2)) + 8);
  cd acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double a = static_cast<double>(k) / n, b = static_cast<double>(k + 1) / n;
    double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < 8; ++i) {
      double u = mid + half * gx[i];
      double um = 1.0;
      for (int j = 0; j < m; ++j) um *= u;
      double ph = beta * u * u * u;
      acc += gw[i] * half * um * cd{std::cos(ph), std::sin(ph)};
    }
  }
  return acc;
}

// phi and phi' on a uniform grid over [0, kTableTop], built once.  Hermite
// cubic interpolation keeps the error near 1e-13 at this spacing.
struct PhiTable {
  double h;
  std::vector<cd> f, df;

  PhiTable() {
    h = kTableTop / (kTableN - 1);
    f.resize(kTableN);
    df.resize(kTableN);
    for (int i = 0; i < kTableN; ++i) {
      double beta = 2.0 * M_PI * (i * h);
      f[i] = panel_integral(beta, 0);
      df[i] = 2.0 * M_PI * cd{0.0, 1.0} * panel_integral(beta, 3);
    }
  }

  cd eval(double t) const {
    double x = t / h;
    int i = std::min(static_cast<int>(x), kTableN - 2);
    double u = x - i;
    double u2 = u * u, u3 = u2 * u;
    double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * f[i] + h * h10 * df[i] + h01 * f[i + 1] + h * h11 * df[i + 1];
  }
};

const PhiTable& phi_table() {
  static PhiTable table;
  return table;
}

// Large-t asymptotics: phi = int_0^infty - int_1^infty.  The full integral
// rotates to Gamma(4/3) (2 pi t)^{-1/3} e^{i pi/6}; the tail expands by
// repeated integration by parts with terms c_k = prod (3j-1) / (3 i beta)^{k+1}.
cd phi_asymptotic(double t) {
  double beta = 2.0 * M_PI * t;
  cd full = kGamma43 * std::pow(beta, -1.0 / 3.0) * cd{std::cos(M_PI / 6), std::sin(M_PI / 6)};
  cd i3b = cd{0.0, 3.0 * beta};
  cd term = -cd{std::cos(beta), std::sin(beta)} / i3b;
  cd tail = 0.0;
  double prev = 1e300;
  for (int k = 0; k < 40; ++k) {
    double mag = std::abs(term);
    if (mag > prev) break;  // optimal truncation reached
    tail += term;
    if (mag < 1e-18) break;
    prev = mag;
    term *= (3.0 * (k + 1) - 1.0) / i3b;
  }
  return full - tail;
}

}  // namespace

std::complex<double> phi_kernel(double t) {
  double at = std::abs(t);
  cd val = at >= kAsymSwitch ? phi_asymptotic(at) : phi_table().eval(at);
  return t < 0 ? std::conj(val) : val;
}

std::complex<double> kernel_v(double theta, double P) {
  return P * phi_kernel(theta * P * P * P);
}

std::complex<double> kernel_w(double theta, double P, double eta) {
  double t = theta * P * P * P;
  return P * (phi_kernel(t) - eta * phi_kernel(t * eta * eta * eta));
}

CubicPairSystem apply_flips(const CubicPairSystem& sys, const std::vector<int>& flips) {
  CubicPairSystem out = sys;
  for (int j = 0; j < sys.s(); ++j) {
    if (flips[j] < 0) {
      out.a[j] = -out.a[j];
      out.b[j] = -out.b[j];
    }
  }
  return out;
}

namespace {

struct Panel {
  double x0, x1, y0, y1;
  cd value;
  double err;
};

struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const { return a.err < b.err; }
};

// Normalized integrand over (sigma, tau) = P^3 (xi, zeta):
//   Phi = (phi(a1 s) - eta phi(a1 s eta^3)) * prod_{j>=2} phi(a_j s + b_j t)
cd integrand_phi(const CubicPairSystem& sys, double eta, double sigma, double tau) {
  double t1 = sys.a[0] * sigma;
  cd acc = phi_kernel(t1) - eta * phi_kernel(t1 * eta * eta * eta);
  for (int j = 1; j < sys.s(); ++j) {
    acc *= phi_kernel(sys.a[j] * sigma + sys.b[j] * tau);
    if (std::abs(acc.real()) + std::abs(acc.imag()) < 1e-300) return {0.0, 0.0};
  }
  return acc;
}

// 4x4 and 8x8 tensor Gauss-Legendre on one panel; the difference is the
// refinement signal.
struct PanelEval {
  cd i8;
  double err;
};

PanelEval eval_panel(const CubicPairSystem& sys, double eta, double x0, double x1, double y0,
                     double y1) {
  static const double g4x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                0.8611363115940526};
  static const double g4w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                0.3478548451374538};
  static const double g8x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                0.7966664774136267,  0.9602898564975363};
  static const double g8w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                0.2223810344533745, 0.1012285362903763};
  double hx = 0.5 * (x1 - x0), mx = 0.5 * (x0 + x1);
  double hy = 0.5 * (y1 - y0), my = 0.5 * (y0 + y1);
  cd i4 = 0.0, i8 = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      i4 += g4w[i] * g4w[j] *
            integrand_phi(sys, eta, mx + hx * g4x[i], my + hy * g4x[j]);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      i8 += g8w[i] * g8w[j] *
            integrand_phi(sys, eta, mx + hx * g8x[i], my + hy * g8x[j]);
  i4 *= hx * hy;
  i8 *= hx * hy;
  return {i8, std::abs(i8 - i4)};
}

}  // namespace

JValue truncated_singular_integral(const CubicPairSystem& sys, double X, double P, double eta,
                                   const QuadratureSettings& settings) {
  if (sys.b[0] != 0 || sys.a[1] != 0)
    throw validation_error("NotNormalized", "singular integral expects the pivot form b1=a2=0");
  if (!(X > 0) || !(P > 0) || !(eta > 0) || !(eta < 1))
    throw validation_error("BadParams", "need X > 0, P > 0, eta in (0,1)");

  // seed grid: panels of bounded edge so the oscillation scale is seen
  int nx = std::max(2, static_cast<int>(std::ceil(2.0 * X / settings.seed_panel)));
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
  cd total = 0.0;
  double total_err = 0.0;
  size_t panels = 0;

  // indexed writes keep the seed order (and the float sum) deterministic
  std::vector<Panel> seeds(static_cast<size_t>(nx) * nx);
  double step = 2.0 * X / nx;
  parallel_for(0, seeds.size(), [&](size_t idx) {
    int i = static_cast<int>(idx) / nx, j = static_cast<int>(idx) % nx;
    double x0 = -X + i * step, y0 = -X + j * step;
    PanelEval pe = eval_panel(sys, eta, x0, x0 + step, y0, y0 + step);
    seeds[idx] = {x0, x0 + step, y0, y0 + step, pe.i8, pe.err};
  });
  for (const Panel& p : seeds) {
    total += p.value;
    total_err += p.err;
    queue.push(p);
  }
  panels = seeds.size();

  while (total_err > settings.rel_tol * std::max(1e-12, std::abs(total)) &&
         panels < settings.max_panels && !queue.empty()) {
    Panel worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.err;
    double xm = 0.5 * (worst.x0 + worst.x1), ym = 0.5 * (worst.y0 + worst.y1);
    const double quads[4][4] = {{worst.x0, xm, worst.y0, ym},
                                {xm, worst.x1, worst.y0, ym},
                                {worst.x0, xm, ym, worst.y1},
                                {xm, worst.x1, ym, worst.y1}};
    for (const auto& qd : quads) {
      PanelEval pe = eval_panel(sys, eta, qd[0], qd[1], qd[2], qd[3]);
      queue.push({qd[0], qd[1], qd[2], qd[3], pe.i8, pe.err});
      total += pe.i8;
      total_err += pe.err;
    }
    panels += 3;
  }
  if (total_err > 100.0 * settings.rel_tol * std::max(1e-12, std::abs(total)))
    throw numeric_error("QuadratureNonConvergence",
                        "singular integral error estimate " + std::to_string(total_err) +
                            " at panel budget");

  JValue out;
  out.normalized = total.real();
  out.imag_residue = total.imag();
  out.error_estimate = total_err;
  out.panels = panels;
  out.value = total.real() * std::pow(P, sys.s() - 6);
  return out;
}

PolytopeIntegral polytope_integral(const CubicPairSystem& sys, double eta, u64 samples, u64 seed) {
  if (sys.b[0] != 0 || sys.a[1] != 0 || sys.a[0] == 0 || sys.b[1] == 0)
    throw validation_error("DegenerateSystem", "polytope integral expects the pivot form");
  const int s = sys.s();
  if (s < 3) throw validation_error("DegenerateSystem", "need s >= 3");

  const double eta3 = eta * eta * eta;
  const double inv_a1 = 1.0 / static_cast<double>(sys.a[0]);
  const double inv_b2 = 1.0 / static_cast<double>(sys.b[1]);
  const double weight_scale = std::pow(3.0, s - 2);

  const u64 batch_size = 1 << 16;
  const u64 batches = (samples + batch_size - 1) / batch_size;
  std::vector<double> sum1(batches, 0.0), sum2(batches, 0.0);

  parallel_for(0, batches, [&](size_t b) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (b + 1)));
    u64 lo = b * batch_size;
    u64 hi = std::min(samples, lo + batch_size);
    double s1 = 0.0, s2 = 0.0;
    for (u64 i = lo; i < hi; ++i) {
      double la = 0.0, lb = 0.0, w = weight_scale;
      for (int j = 2; j < s; ++j) {
        double u = ((rng() >> 11) + 0.5) * 0x1.0p-53;  // uniform in (0,1)
        double om = u * u * u;
        la += sys.a[j] * om;
        lb += sys.b[j] * om;
      }
      double om1 = -la * inv_a1;
      double om2 = -lb * inv_b2;
      if (om1 < eta3 || om1 > 1.0 || om2 <= 0.0 || om2 > 1.0) continue;
      double val = w * std::pow(om1 * om2, -2.0 / 3.0);
      s1 += val;
      s2 += val * val;
    }
    sum1[b] = s1;
    sum2[b] = s2;
  });
  double t1 = 0.0, t2 = 0.0;
  for (u64 b = 0; b < batches; ++b) {
    t1 += sum1[b];
    t2 += sum2[b];
  }
  double n = static_cast<double>(samples);
  PolytopeIntegral out;
  out.samples = samples;
  out.seed = seed;
  out.estimate = t1 / n;
  double var = std::max(0.0, t2 / n - out.estimate * out.estimate);
  out.stderr_estimate = std::sqrt(var / n);
  return out;
}

MainTermPrediction main_term_prediction(const CubicPairSystem& normalized_sys,
                                        const CubicPairSystem& original_sys, double P, double eta,
                                        u64 X_series, double X_integral) {
  MainTermPrediction out;
  i64 Pi = static_cast<i64>(P);
  SmoothSet A = smooth_numbers(Pi, default_smoothness_bound(Pi));
  out.rho = static_cast<double>(A.card()) / P;
  SeriesBudget sb;
  sb.exact_max = std::max<u64>(sb.exact_max, X_series);
  out.series_value = truncated_series(original_sys, X_series, sb).value.get_d();
  out.integral_value = truncated_singular_integral(normalized_sys, X_integral, P, eta).value;
  out.prediction =
      std::pow(out.rho, original_sys.s() - 1) * out.series_value * out.integral_value;
  return out;
}

}  // namespace dcpair
