#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wormkit/geometry.hpp"
#include "wormkit/monomials.hpp"

namespace wormkit {

// Normalized Gram system for projecting a target onto span(basis).
//   matrix(i, k) = <b_i, b_k> / (|b_i| |b_k|)
//   rhs(i)       = <target, b_i> / (|target| |b_i|)
struct GramSystem {
  std::vector<PowerSpec> basis;
  PowerSpec target;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  double log_target_norm_sq = 0.0;
  double target_norm_sq = 0.0;  // +inf if it overflows; see log_target_norm_sq
};

GramSystem gram_system(const PowerSpec& target,
                       const std::vector<PowerSpec>& basis,
                       const WormParams& params);

// Same in A^2(Delta) with basis zeta^{alpha_k} (the j fields are ignored).
GramSystem disk_gram_system(cplx target_exponent,
                            const std::vector<cplx>& basis_exponents);

// Relative drop tolerance of the pseudo-inverse (times the largest
// eigenvalue).
inline constexpr double kPinvDropTol = 1e-12;
inline constexpr double kIllConditioned = 1e12;

struct Projection {
  double residual = 1.0;            // |target - P target| / |target|, in [0, 1]
  double condition_estimate = 1.0;  // lambda_max / lambda_min of the Gram matrix
  int rank = 0;                     // eigenvalues kept by the pseudo-inverse
  bool ill_conditioned = false;     // condition_estimate > 1e12
};

Projection projection_residual(const GramSystem& sys);

// Smallest eigenvalue of the Hermitian part of the Gram matrix.
double min_eigenvalue(const GramSystem& sys);

struct ResidualCurve {
  std::vector<int> truncation_sizes;
  std::vector<double> residuals;
  std::vector<double> condition_estimates;
  std::vector<bool> ill_conditioned;
  // Set when mu <= pi/2, outside the completeness hypotheses; values are
  // exploratory.
  bool outside_hypothesis = false;
};

// Bessel inequality certificate for the odd element H_{2m+1,j} against the
// even orthogonal system {H_{2k,j}}.
struct BesselDefect {
  double lhs = 0.0;          // ||H_{2m+1,j}||^2
  double rhs_partial = 0.0;  // sum_{k<=k_max} |<H_{2m+1,j}, H_{2k,j}>|^2 / ||H_{2k,j}||^2
  double tail_bound = 0.0;   // bound on the k > k_max terms
  double margin = 0.0;       // lhs - rhs_partial - tail_bound
  double relative_margin = 0.0;  // margin / lhs
};

BesselDefect bessel_defect(int m, int j, const WormParams& params, int k_max);

// The chain of sums bounding the normalized Bessel sum, over k = 0..k_max.
struct BoundChain {
  double normalized_bessel = 0.0;  // rhs_partial / lhs, via the inner products
  double sine_weighted_sum = 0.0;  // Gamma-form sum with the sin^2 factors
  double gamma_bound_sum = 0.0;    // same with sin^2 replaced by 1
  double envelope = 0.0;           // sum 1/(pi^2 (k - (2m+1)/2)^2)
};

BoundChain bessel_bound_chain(int m, int j, const WormParams& params,
                              int k_max);

struct Pi2Series {
  double two_sided = 0.0;  // sum_{|k|<=n} 1/(k - (2m+1)/2)^2
  double one_sided = 0.0;  // sum_{0<=k<=n}
};

Pi2Series pi2_series(int m, int n_terms);

struct GammaCsCheck {
  double log_lhs = 0.0;  // 2 log Gamma(c + x + y)
  double log_rhs = 0.0;  // log Gamma(c + 2x) + log Gamma(c + 2y)
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;    // lhs <= rhs (1 + 1e-12)
};

GammaCsCheck gamma_cs_check(double c, double x, double y);

struct ResidualPoint {
  int n = -1;
  double residual = 1.0;
  double condition_estimate = 1.0;
  bool ill_conditioned = false;
};

// Residual of zeta^sigma against span{zeta^{lambda_k} : 0 <= k <= n},
// lambda_k = a k + c0 + i b, in A^2(Delta). n = -1 is the empty span.
ResidualPoint muntz_residual(cplx target_sigma, double a, double c0, double b,
                             int n);

enum class SpanParity { kAll, kEven, kOdd };

// For n = 0..n_max: residual of each target against
// span{H_{ell,j} : 0 <= ell <= n, ell of the requested parity}.
std::vector<ResidualCurve> completeness_study(
    int j, const WormParams& params, const std::vector<PowerSpec>& targets,
    int n_max, SpanParity parity = SpanParity::kAll);

// For n = 1..n_max: residual of H_{0,j} against span{H_{1,j}, ..., H_{n,j}}.
// The residual decays: dropping H_{0,j} leaves a family that still spans it,
// so expansions in the full family are not unique.
ResidualCurve redundancy_study(int j, const WormParams& params, int n_max);

}  // namespace wormkit
