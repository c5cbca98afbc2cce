#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dcpair/smooth.hpp"
#include "dcpair/system.hpp"

namespace dcpair {

// Exact count paired with whatever independent recomputation was run.
struct CountReport {
  std::string quantity;
  Int exact = 0;
  std::optional<Int> oracle;
  std::string params;
  double elapsed_seconds = 0.0;
};

struct CountingBudget {
  size_t max_table_entries = size_t(1) << 28;
};

// Primitive integer spanning vector of the null space of the 2x3 matrix
// with rows c, d; all entries nonzero when the pairwise-determinant
// condition holds.  g is the content divided out of the raw cross product.
struct KernelVector {
  std::array<i64, 3> k;
  i64 g = 1;
};

// Requires (c1 d2 - c2 d1)(c1 d3 - c3 d1)(c2 d3 - c3 d2) != 0.
KernelVector kernel_vector(const std::array<i64, 3>& c, const std::array<i64, 3>& d);
bool pairwise_determinant_condition(const std::array<i64, 3>& c, const std::array<i64, 3>& d);

// Number of solutions of x1^3+x2^3+x3^3 = y1^3+y2^3+y3^3 with all six
// variables in A(P,R); equals the sixth moment of the smooth Weyl sum.
CountReport sixth_moment_count(i64 P, i64 R, const CountingBudget& budget = {});

// Rectangle rule for the 2k-th moment of |h| with M nodes.  With
// M >= k*P^3 + 1 the rule is exact for the underlying trigonometric
// polynomial, so rounding recovers the integer count.
double moment_quadrature(const SmoothSet& s, int two_k, i64 M);

// Count of (n1,n2,n3), each a difference of two sums of e_i/2 cubes over
// A(P,R), with c.n = d.n = 0; computed along the primitive kernel vector.
CountReport even_moment_pair_count(const std::array<i64, 3>& c, const std::array<i64, 3>& d,
                                   const std::array<int, 3>& e, i64 P, i64 R,
                                   const CountingBudget& budget = {});

// Independent double-loop oracle for the same count (test oracle; iterates
// the supports of rho_1, rho_2 and solves for n3).
Int even_moment_pair_oracle(const std::array<i64, 3>& c, const std::array<i64, 3>& d,
                            const std::array<int, 3>& e, i64 P, i64 R);

// rho table: value -> #representations as (sum of k cubes) - (sum of k
// cubes) over A(P,R).  Offset layout on [-k*P^3, k*P^3].
std::vector<i64> cube_difference_table(const SmoothSet& s, int k, const CountingBudget& budget);

// N(P): solutions of the pair in the box [-P,P]^s, meet-in-the-middle.
CountReport count_solutions_box(const CubicPairSystem& sys, i64 P, bool include_trivial,
                                const CountingBudget& budget = {});

// Direct enumeration oracle for small systems (test oracle).
Int count_solutions_box_direct(const CubicPairSystem& sys, i64 P);

// Solutions with x_1 in (eta P, P] and x_j in A(P,R) for j >= 2: the count
// the smooth-box main term rho^{s-1} S(X) J(X) approximates.  Exact, meet
// in the middle over the per-variable domains.
CountReport smooth_restricted_count(const CubicPairSystem& sys, i64 P, i64 R, double eta,
                                    const CountingBudget& budget = {});

// Rectangle-rule oracle for N(P) via the full box sums F_j; exact at the
// stated grid sizes by the trigonometric degree bound.  Includes the zero
// vector.  M1 > 2*(sum |a_j|)*P^3 and M2 > 2*(sum |b_j|)*P^3 are enforced.
Int quadrature_box_count_oracle(const CubicPairSystem& sys, i64 P, i64 M1 = 0, i64 M2 = 0,
                                const CountingBudget& budget = {});

// psi_ell(m) = int_0^1 |h(ell a)|^5 e(-a m) da by rectangle rule with M
// nodes; returns the value and the delta against the 2M-node rule.
struct PsiValue {
  double value = 0.0;
  double imag_residue = 0.0;
  double convergence_delta = 0.0;  // |value_M - value_2M|
};
PsiValue fourier_psi(i64 ell, i64 m, const SmoothSet& s, i64 M);

// 2D rectangle-rule value of the mixed mean value
//   I(a,b,c,d) = int int |h(a alpha) h(b beta)|^5 |sum_B e((c alpha + d beta) z^3)|^2
// used as the cross-check target for the psi decomposition.
double mixed_mean_value_quadrature(i64 a, i64 b, i64 c, i64 d, const SmoothSet& s,
                                   const std::vector<i64>& B, i64 M1, i64 M2);

// Trend tables: exact counts over a P list with consecutive log-slopes and
// the admissible-exponent reference line.
struct TrendRow {
  i64 P = 0;
  i64 R = 0;
  Int count;
  double slope = 0.0;  // vs previous row; 0 for the first row
  double ref_exponent = 0.0;
};
struct TrendReport {
  std::vector<TrendRow> rows;
  double xi = 0.0;             // admissible exponent reference
  double lsq_slope = 0.0;      // least squares on (log P, log count)
  std::vector<i64> flagged_P;  // rows whose slope exceeds reference + slack
};

double admissible_exponent_xi();

enum class TrendKind { Sixth, EvenPair };

struct EvenPairParams {
  std::array<i64, 3> c{};
  std::array<i64, 3> d{};
  std::array<int, 3> e{};
};

TrendReport moment_trend_report(TrendKind kind, const std::vector<i64>& Ps, double r_theta,
                                const EvenPairParams& params, double slack = 0.75,
                                const CountingBudget& budget = {});

std::string trend_to_csv(const TrendReport& t);

}  // namespace dcpair
