#pragma once

#include <complex>
#include <functional>

#include "wormkit/geometry.hpp"
#include "wormkit/monomials.hpp"

namespace wormkit {

// Brute-force numerical values used to check the closed forms.
struct OracleResult {
  cplx value;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
  // Monte-Carlo only: fraction of box draws that landed in W'_mu.
  double acceptance_rate = 1.0;
};

// int_Delta zeta^alpha conj(zeta^beta) dA by the corner cubature at cfg and
// at cfg.refined(); returns the finer value with |fine - coarse| as the error
// estimate. Throws NonConvergenceError when that difference exceeds
// 10 * max(abs_tol, rel_tol * int |integrand|).
OracleResult quad_disk_inner(cplx alpha, cplx beta, const QuadConfig& cfg);

// <F_a, F_b> in A^2(W'_mu) through the fiber reduction
//   pi int_Delta int_{|s|<mu} F_a conj(F_b) e^{s} ds dA(zeta),
// with F evaluated at the ambient point (zeta e^{is}, e^{s/2}).
OracleResult quad_worm_inner(const PowerSpec& a, const PowerSpec& b,
                             const WormParams& params, const QuadConfig& cfg);

// Monte-Carlo estimate of the 4-real-dimensional integral over W'_mu.
// abs_error_estimate is one standard error. Throws NonConvergenceError if the
// acceptance rate drops below 1%.
OracleResult mc_worm_inner(const PowerSpec& a, const PowerSpec& b,
                           const WormParams& params, const QuadConfig& cfg);

using AmbientFunction = std::function<cplx(cplx z1, cplx z2)>;

// Q_j F at (z1, sqrt(r2)): trapezoid rule for
//   (1/2pi) int_{-pi}^{pi} F(z1, e^{it} sqrt(r2)) e^{-ijt} dt.
// Exact for trigonometric polynomials in t of degree < n_angle / 2.
cplx q_project(const AmbientFunction& f, int j, cplx z1, double r2,
               int n_angle);

}  // namespace wormkit
