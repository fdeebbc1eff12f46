#pragma once

#include <complex>
#include <span>

namespace wormkit::special {

using cplx = std::complex<double>;

// A complex number stored as (log |z|, arg z). log_modulus may be -inf for
// an exact zero.
struct LogComplex {
  double log_modulus = 0.0;
  double phase = 0.0;  // principal value in (-pi, pi]

  // Builds from an arbitrary (possibly unreduced) complex logarithm.
  static LogComplex from_log(cplx log_value);
  static LogComplex from_value(cplx value);

  // exp back to a complex number; throws OverflowError if |z| is not
  // representable.
  cplx value() const;
};

/// Principal-phase log Gamma. Lanczos (g = 7, 9 terms) for Re z >= 1/2 and
/// the reflection formula otherwise. Throws PoleError at z in {0, -1, -2, ...}.
LogComplex log_gamma(cplx z);

/// Unreduced log Gamma; the imaginary part is some valid branch value and is
/// only meaningful modulo 2*pi. Used for summing phases before reduction.
cplx log_gamma_raw(cplx z);

/// prod Gamma(num) / prod Gamma(den), with all cancellation done in log space.
cplx gamma_ratio(std::span<const cplx> num, std::span<const cplx> den);
LogComplex log_gamma_ratio(std::span<const cplx> num, std::span<const cplx> den);

/// |mu * w| below this uses the Taylor branch of sinh(mu w)/w.
inline constexpr double kSinhRatioSwitch = 1e-3;

/// sinh(mu w) / w with the removable singularity at w = 0 filled in (value mu).
/// Throws OverflowError when sinh(mu w) is not representable.
cplx sinh_ratio(cplx w, double mu);

/// log of sinh_ratio; never overflows. log_modulus is -inf at exact zeros of
/// sinh(mu w).
LogComplex log_sinh_ratio(cplx w, double mu);

/// Trigamma psi'(x) for real x > 0, i.e. sum_{k>=0} 1/(x+k)^2.
double trigamma(double x);

}  // namespace wormkit::special
