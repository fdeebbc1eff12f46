#include "wormkit/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/trigamma.hpp>

#include "wormkit/errors.hpp"

namespace wormkit::special {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPoleTol = 1e-12;
const double kMaxLog = std::log(std::numeric_limits<double>::max());

// Lanczos coefficients for g = 7, n = 9.
constexpr int kLanczosG = 7;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double reduce_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

bool is_gamma_pole(cplx z) {
  if (std::abs(z.imag()) > kPoleTol || z.real() > 0.5) return false;
  const double n = std::round(z.real());
  return n <= 0.0 && std::abs(z.real() - n) <= kPoleTol;
}

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < static_cast<int>(kLanczos.size()); ++i) {
    x += kLanczos[i] / (z + static_cast<double>(i));
  }
  const cplx t = z + (kLanczosG + 0.5);
  return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z), stable for large |Im z|.
cplx log_sin_pi(cplx z) {
  const cplx ipz = cplx(0.0, kPi) * z;
  if (std::abs(z.imag()) <= 20.0) return std::log(std::sin(kPi * z));
  const cplx log_2i = std::log(cplx(0.0, 2.0));
  if (z.imag() > 0.0) {
    return cplx(0.0, kPi) - ipz + std::log(1.0 - std::exp(2.0 * ipz)) - log_2i;
  }
  return ipz + std::log(1.0 - std::exp(-2.0 * ipz)) - log_2i;
}

}  // namespace

LogComplex LogComplex::from_log(cplx log_value) {
  return {log_value.real(), reduce_phase(log_value.imag())};
}

LogComplex LogComplex::from_value(cplx value) {
  if (value == cplx(0.0)) {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  return {std::log(std::abs(value)), reduce_phase(std::arg(value))};
}

cplx LogComplex::value() const {
  if (log_modulus == -std::numeric_limits<double>::infinity()) return 0.0;
  if (!std::isfinite(log_modulus) || log_modulus > kMaxLog) {
    std::ostringstream os;
    os << "magnitude exp(" << log_modulus << ") is not representable";
    throw OverflowError(os.str());
  }
  return std::polar(std::exp(log_modulus), phase);
}

cplx log_gamma_raw(cplx z) {
  if (is_gamma_pole(z)) {
    std::ostringstream os;
    os << "log_gamma: pole of Gamma at z = " << z.real();
    throw PoleError(os.str());
  }
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

LogComplex log_gamma(cplx z) { return LogComplex::from_log(log_gamma_raw(z)); }

LogComplex log_gamma_ratio(std::span<const cplx> num,
                           std::span<const cplx> den) {
  // Phases are accumulated unreduced and reduced once at the end.
  cplx acc = 0.0;
  for (const cplx& z : num) acc += log_gamma_raw(z);
  for (const cplx& z : den) acc -= log_gamma_raw(z);
  return LogComplex::from_log(acc);
}

cplx gamma_ratio(std::span<const cplx> num, std::span<const cplx> den) {
  return log_gamma_ratio(num, den).value();
}

LogComplex log_sinh_ratio(cplx w, double mu) {
  const cplx x = mu * w;
  if (std::abs(x) < kSinhRatioSwitch) {
    const cplx x2 = x * x;
    return LogComplex::from_value(mu * (1.0 + x2 / 6.0 + x2 * x2 / 120.0));
  }
  if (std::abs(x.real()) < 20.0) {
    return LogComplex::from_value(std::sinh(x) / w);
  }
  cplx log_sinh;
  if (x.real() > 0.0) {
    log_sinh = x - std::log(2.0) + std::log(1.0 - std::exp(-2.0 * x));
  } else {
    log_sinh = cplx(0.0, kPi) - x - std::log(2.0) +
               std::log(1.0 - std::exp(2.0 * x));
  }
  return LogComplex::from_log(log_sinh - std::log(w));
}

cplx sinh_ratio(cplx w, double mu) {
  const cplx x = mu * w;
  if (std::abs(x) < kSinhRatioSwitch) {
    const cplx x2 = x * x;
    return mu * (1.0 + x2 / 6.0 + x2 * x2 / 120.0);
  }
  if (std::abs(x.real()) < 20.0) return std::sinh(x) / w;
  return log_sinh_ratio(w, mu).value();
}

double trigamma(double x) {
  if (!(x > 0.0)) throw DomainError("trigamma: argument must be positive");
  return boost::math::trigamma(x);
}

}  // namespace wormkit::special
