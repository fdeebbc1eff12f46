#include "wormkit/monomials.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wormkit/errors.hpp"

namespace wormkit {
namespace {

using special::LogComplex;

cplx int_pow(cplx base, int n) {
  if (n < 0) return 1.0 / int_pow(base, -n);
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

void require_convergent(cplx exponent, const char* who) {
  if (!(exponent.real() > -1.0)) {
    std::ostringstream os;
    os << who << ": Re(exponent) = " << exponent.real()
       << " <= -1, integral diverges";
    throw DivergentIntegralError(os.str());
  }
}

}  // namespace

void PowerSpec::validate() const { require_convergent(alpha, "PowerSpec"); }

PowerSpec resolve(MonomialIndex idx, const WormParams& params) {
  if (idx.ell < 0) throw std::invalid_argument("MonomialIndex.ell must be >= 0");
  return {cplx(params.c0() + params.nu() * idx.ell, 0.5 * (idx.j + 1)), idx.j};
}

cplx eval_L(cplx z1, cplx z2) {
  if (z2 == cplx(0.0)) throw DomainError("eval_L: z2 = 0");
  const double s = 2.0 * std::log(std::abs(z2));
  const cplx zeta = z1 * std::polar(1.0, -s);
  if (zeta.imag() == 0.0 && zeta.real() <= 0.0) {
    throw DomainError("eval_L: z1 e^{-i log|z2|^2} on the branch cut");
  }
  return std::log(zeta) + cplx(0.0, s);
}

cplx eval_F(const PowerSpec& spec, cplx z1, cplx z2) {
  const cplx a = spec.alpha;
  if (a.imag() == 0.0 && a.real() == std::round(a.real()) &&
      std::abs(a.real()) < 1e9) {
    if (z2 == cplx(0.0)) throw DomainError("eval_F: z2 = 0");
    return int_pow(z1, static_cast<int>(a.real())) * int_pow(z2, spec.j);
  }
  return std::exp(a * eval_L(z1, z2)) * int_pow(z2, spec.j);
}

LogComplex log_disk_inner(cplx alpha, cplx beta) {
  require_convergent(alpha, "disk_inner");
  require_convergent(beta, "disk_inner");
  const cplx bc = std::conj(beta);
  const std::array<cplx, 1> num{alpha + bc + 2.0};
  const std::array<cplx, 2> den{alpha + 2.0, bc + 2.0};
  LogComplex r = special::log_gamma_ratio(num, den);
  r.log_modulus += std::log(std::numbers::pi);
  return r;
}

cplx disk_inner(cplx alpha, cplx beta) {
  return log_disk_inner(alpha, beta).value();
}

cplx gamma_ab(cplx alpha, cplx beta, int j, const WormParams& params) {
  const cplx w = static_cast<double>(j + 1) +
                 cplx(0.0, 1.0) * (alpha - std::conj(beta));
  return special::sinh_ratio(w, params.mu());
}

LogComplex log_worm_inner(const PowerSpec& a, const PowerSpec& b,
                          const WormParams& params) {
  if (a.j != b.j) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  const LogComplex disk = log_disk_inner(a.alpha, b.alpha);
  const cplx w = static_cast<double>(a.j + 1) +
                 cplx(0.0, 1.0) * (a.alpha - std::conj(b.alpha));
  const LogComplex g = special::log_sinh_ratio(w, params.mu());
  // 2 pi^2 gamma ratio = 2 pi * gamma_ab * disk_inner.
  return LogComplex::from_log(
      cplx(std::log(2.0 * std::numbers::pi) + disk.log_modulus + g.log_modulus,
           disk.phase + g.phase));
}

cplx worm_inner(const PowerSpec& a, const PowerSpec& b,
                const WormParams& params) {
  if (a.j != b.j) return 0.0;
  return log_worm_inner(a, b, params).value();
}

double log_worm_norm_sq(const PowerSpec& spec, const WormParams& params) {
  spec.validate();
  const cplx a = spec.alpha;
  // sinh[mu (j+1-2 Im a)] / (j+1-2 Im a) is real and positive.
  const double w = spec.j + 1 - 2.0 * a.imag();
  const double log_sinh = special::log_sinh_ratio(cplx(w, 0.0), params.mu())
                              .log_modulus;
  const double log_gamma_part =
      special::log_gamma_raw(cplx(2.0 + 2.0 * a.real(), 0.0)).real() -
      2.0 * special::log_gamma_raw(2.0 + a).real();
  return std::log(kWormPrefactor) + log_sinh + log_gamma_part;
}

double worm_norm_sq(const PowerSpec& spec, const WormParams& params) {
  return LogComplex{log_worm_norm_sq(spec, params), 0.0}.value().real();
}

cplx normalized_worm_inner(const PowerSpec& a, const PowerSpec& b,
                           const WormParams& params) {
  if (a.j != b.j) return 0.0;
  LogComplex r = log_worm_inner(a, b, params);
  r.log_modulus -= 0.5 * (log_worm_norm_sq(a, params) +
                          log_worm_norm_sq(b, params));
  return r.value();
}

bool is_orthogonal(const PowerSpec& a, const PowerSpec& b,
                   const WormParams& params) {
  if (a.j != b.j) {
    throw std::invalid_argument("is_orthogonal: specs in different sectors");
  }
  const cplx d = a.alpha - std::conj(b.alpha);
  const double target_im = a.j + 1.0;
  if (std::abs(d.imag() - target_im) >
      kOrthogonalityTol * std::max(1.0, std::abs(target_im))) {
    return false;
  }
  const double k = d.real() / (2.0 * params.nu());
  const double k_int = std::round(k);
  if (k_int == 0.0) return false;
  return std::abs(k - k_int) <= kOrthogonalityTol * std::max(1.0, std::abs(k));
}

}  // namespace wormkit
