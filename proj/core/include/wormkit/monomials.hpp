#pragma once

#include <complex>

#include "wormkit/geometry.hpp"
#include "wormkit/special_fn.hpp"

namespace wormkit {

// F_{alpha,j}(z) = E_alpha(z) z2^j, where E_alpha = exp(alpha L(z)).
struct PowerSpec {
  cplx alpha;
  int j = 0;

  // Throws DivergentIntegralError unless Re alpha > -1.
  void validate() const;
};

// H_{ell,j} = F_{c0 + nu ell + i(j+1)/2, j}.
struct MonomialIndex {
  int ell = 0;
  int j = 0;
};

PowerSpec resolve(MonomialIndex idx, const WormParams& params);

/// L(z) = log(z1 e^{-i log|z2|^2}) + i log|z2|^2 on the principal branch.
/// Throws DomainError when z1 e^{-i log|z2|^2} lies on (-inf, 0].
cplx eval_L(cplx z1, cplx z2);

/// exp(alpha L(z)) z2^j. Integer alpha is evaluated as z1^alpha z2^j.
cplx eval_F(const PowerSpec& spec, cplx z1, cplx z2);

/// <zeta^alpha, zeta^beta> in A^2(Delta) = pi Gamma(a + conj(b) + 2) /
/// (Gamma(a + 2) Gamma(conj(b) + 2)).
cplx disk_inner(cplx alpha, cplx beta);
special::LogComplex log_disk_inner(cplx alpha, cplx beta);

/// gamma_{alpha beta} = (1/2) int_{|s|<mu} e^{s w} ds = sinh(mu w)/w with
/// w = j + 1 + i (alpha - conj(beta)).
cplx gamma_ab(cplx alpha, cplx beta, int j, const WormParams& params);

// Prefactor of the closed-form worm inner product:
//   <F_a, F_b> = 2 pi^2 gamma_ab Gamma(a + conj(b) + 2) / (Gamma(a+2) Gamma(conj(b)+2)).
// It is 2 pi (from the s integral, gamma_ab carrying the 1/2) times the pi of
// disk_inner; direct integration of |z2|^{-2} over W'_mu (= 2 pi^2 mu)
// confirms it.
inline constexpr double kWormPrefactor =
    2.0 * 3.14159265358979323846 * 3.14159265358979323846;

/// A^2(W'_mu) inner product. Exactly 0 for different sectors a.j != b.j.
cplx worm_inner(const PowerSpec& a, const PowerSpec& b,
                const WormParams& params);
special::LogComplex log_worm_inner(const PowerSpec& a, const PowerSpec& b,
                                   const WormParams& params);

/// ||F_spec||^2 in A^2(W'_mu); strictly positive.
double worm_norm_sq(const PowerSpec& spec, const WormParams& params);
double log_worm_norm_sq(const PowerSpec& spec, const WormParams& params);

/// <a, b> / (||a|| ||b||), computed in log space so it stays finite when the
/// raw norms overflow.
cplx normalized_worm_inner(const PowerSpec& a, const PowerSpec& b,
                           const WormParams& params);

// Relative tolerance of the exact orthogonality test.
inline constexpr double kOrthogonalityTol = 1e-12;

/// True iff alpha - conj(beta) = 2 k nu + i (j + 1) with k a nonzero integer.
/// Requires a.j == b.j (throws std::invalid_argument otherwise).
bool is_orthogonal(const PowerSpec& a, const PowerSpec& b,
                   const WormParams& params);

}  // namespace wormkit
