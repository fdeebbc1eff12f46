#include "wormkit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "wormkit/errors.hpp"
#include "wormkit/reduction.hpp"
#include "wormkit/special_fn.hpp"

namespace wormkit {
namespace {

constexpr double kPi = std::numbers::pi;
using special::LogComplex;

double lgamma_real(double x) {
  return special::log_gamma_raw(cplx(x, 0.0)).real();
}

bool same_spec(const PowerSpec& a, const PowerSpec& b) {
  return a.j == b.j && a.alpha == b.alpha;
}

// Assembles a normalized Gram system from log-space inner products and
// log squared norms.
template <typename LogInner, typename LogNormSq>
GramSystem assemble(const PowerSpec& target, const std::vector<PowerSpec>& basis,
                    LogInner&& log_inner, LogNormSq&& log_norm_sq) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  GramSystem sys;
  sys.basis = basis;
  sys.target = target;
  sys.matrix.resize(n, n);
  sys.rhs.resize(n);
  sys.log_target_norm_sq = log_norm_sq(target);
  sys.target_norm_sq =
      sys.log_target_norm_sq > std::log(std::numeric_limits<double>::max())
          ? std::numeric_limits<double>::infinity()
          : std::exp(sys.log_target_norm_sq);

  std::vector<double> log_norms(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    log_norms[i] = log_norm_sq(basis[i]);
  }
  auto normalized = [&](const PowerSpec& a, const PowerSpec& b, double la,
                        double lb) {
    LogComplex r = log_inner(a, b);
    r.log_modulus -= 0.5 * (la + lb);
    return r.value();
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    sys.matrix(i, i) = 1.0;
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const cplx v = normalized(basis[i], basis[k], log_norms[i], log_norms[k]);
      sys.matrix(i, k) = v;
      sys.matrix(k, i) = std::conj(v);
    }
    sys.rhs(i) = normalized(target, basis[i], sys.log_target_norm_sq,
                            log_norms[i]);
  }
  return sys;
}

}  // namespace

GramSystem gram_system(const PowerSpec& target,
                       const std::vector<PowerSpec>& basis,
                       const WormParams& params) {
  target.validate();
  for (const auto& b : basis) {
    b.validate();
    if (b.j != target.j) {
      throw std::invalid_argument("gram_system: basis and target sectors differ");
    }
  }
  return assemble(
      target, basis,
      [&](const PowerSpec& a, const PowerSpec& b) {
        return log_worm_inner(a, b, params);
      },
      [&](const PowerSpec& s) { return log_worm_norm_sq(s, params); });
}

GramSystem disk_gram_system(cplx target_exponent,
                            const std::vector<cplx>& basis_exponents) {
  std::vector<PowerSpec> basis;
  basis.reserve(basis_exponents.size());
  for (const cplx& e : basis_exponents) basis.push_back({e, 0});
  return assemble(
      PowerSpec{target_exponent, 0}, basis,
      [](const PowerSpec& a, const PowerSpec& b) {
        return log_disk_inner(a.alpha, b.alpha);
      },
      [](const PowerSpec& s) { return log_disk_inner(s.alpha, s.alpha).log_modulus; });
}

double min_eigenvalue(const GramSystem& sys) {
  if (sys.matrix.size() == 0) return 0.0;
  const Eigen::MatrixXcd h = 0.5 * (sys.matrix + sys.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

Projection projection_residual(const GramSystem& sys) {
  Projection out;
  const Eigen::Index n = sys.matrix.rows();
  if (n == 0) return out;

  const Eigen::MatrixXcd h = 0.5 * (sys.matrix + sys.matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = lambda(n - 1);
  const double lambda_min = lambda(0);
  out.condition_estimate = lambda_min > 0.0
                               ? lambda_max / lambda_min
                               : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.condition_estimate <= kIllConditioned);

  // A target that is itself a basis element lies in the span.
  for (const auto& b : sys.basis) {
    if (same_spec(b, sys.target)) {
      out.residual = 0.0;
      out.rank = static_cast<int>(n);
      return out;
    }
  }

  // With u_i = <b_i, target> = conj(rhs_i), the squared distance is
  // 1 - u^H G^+ u.
  const Eigen::VectorXcd u = sys.rhs.conjugate();
  const Eigen::VectorXcd coords = eig.eigenvectors().adjoint() * u;
  const double drop = kPinvDropTol * lambda_max;
  std::vector<double> terms;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (lambda(k) > drop) {
      terms.push_back(std::norm(coords(k)) / lambda(k));
      ++out.rank;
    }
  }
  const double explained = pairwise_sum(terms);
  out.residual = std::sqrt(std::clamp(1.0 - explained, 0.0, 1.0));
  return out;
}

BesselDefect bessel_defect(int m, int j, const WormParams& params, int k_max) {
  if (m < 0) throw std::invalid_argument("bessel_defect: m must be >= 0");
  if (k_max < m + 2) {
    throw std::invalid_argument("bessel_defect: k_max must be >= m + 2");
  }
  const PowerSpec odd = resolve({2 * m + 1, j}, params);
  const double log_lhs = log_worm_norm_sq(odd, params);

  std::vector<double> rel_terms;
  rel_terms.reserve(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    const PowerSpec even = resolve({2 * k, j}, params);
    const double log_term = 2.0 * log_worm_inner(odd, even, params).log_modulus -
                            log_worm_norm_sq(even, params) - log_lhs;
    const double t = std::exp(log_term);
    if (!std::isfinite(t)) {
      throw OverflowError("bessel_defect: term k = " + std::to_string(k) +
                          " is not finite");
    }
    rel_terms.push_back(t);
  }
  const double rel_partial = pairwise_sum(rel_terms);
  // Each omitted term is at most 1/(pi^2 (k - m - 1/2)^2) of lhs, and
  // sum_{k > k_max} 1/(k - m - 1/2)^2 = trigamma(k_max + 1/2 - m).
  const double rel_tail = special::trigamma(k_max + 0.5 - m) / (kPi * kPi);

  BesselDefect out;
  out.lhs = LogComplex{log_lhs, 0.0}.value().real();
  out.rhs_partial = out.lhs * rel_partial;
  out.tail_bound = out.lhs * rel_tail;
  out.relative_margin = (1.0 - rel_partial) - rel_tail;
  out.margin = out.lhs * out.relative_margin;
  return out;
}

BoundChain bessel_bound_chain(int m, int j, const WormParams& params,
                              int k_max) {
  const BesselDefect defect = bessel_defect(m, j, params, k_max);
  const double mu = params.mu();
  const double nu = params.nu();
  const double c = 2.0 * params.c0() + 2.0;
  const double log_odd = lgamma_real(c + 2.0 * (2 * m + 1) * nu);

  std::vector<double> sine_weighted, gamma_bound, envelope;
  for (int k = 0; k <= k_max; ++k) {
    const double x = (2.0 * k - (2 * m + 1)) * nu;
    const double sin_factor = std::sin(mu * x) / x;
    const double log_gamma_part = 2.0 * lgamma_real(c + (2.0 * (k + m) + 1) * nu) -
                                  log_odd - lgamma_real(c + 4.0 * k * nu);
    const double gamma_part = std::exp(log_gamma_part);
    const double shift = k - (2 * m + 1) / 2.0;
    const double env = 1.0 / (kPi * kPi * shift * shift);
    sine_weighted.push_back(sin_factor * sin_factor / (mu * mu) * gamma_part);
    gamma_bound.push_back(env * gamma_part);
    envelope.push_back(env);
  }
  BoundChain out;
  out.normalized_bessel = defect.rhs_partial / defect.lhs;
  out.sine_weighted_sum = pairwise_sum(sine_weighted);
  out.gamma_bound_sum = pairwise_sum(gamma_bound);
  out.envelope = pairwise_sum(envelope);
  return out;
}

Pi2Series pi2_series(int m, int n_terms) {
  if (n_terms < 0) throw std::invalid_argument("pi2_series: n_terms must be >= 0");
  const double center = (2 * m + 1) / 2.0;
  auto term = [&](int k) {
    const double d = k - center;
    return 1.0 / (d * d);
  };
  // Smallest terms first.
  std::vector<double> one, neg;
  for (int k = n_terms; k >= 0; --k) one.push_back(term(k));
  for (int k = -n_terms; k < 0; ++k) neg.push_back(term(k));
  Pi2Series out;
  out.one_sided = pairwise_sum(one);
  out.two_sided = pairwise_sum(neg) + out.one_sided;
  return out;
}

GammaCsCheck gamma_cs_check(double c, double x, double y) {
  if (!(c >= 0.0 && x > 0.0 && y > 0.0)) {
    throw std::invalid_argument("gamma_cs_check: need c >= 0, x > 0, y > 0");
  }
  GammaCsCheck out;
  out.log_lhs = 2.0 * lgamma_real(c + x + y);
  out.log_rhs = lgamma_real(c + 2.0 * x) + lgamma_real(c + 2.0 * y);
  out.lhs = std::exp(out.log_lhs);
  out.rhs = std::exp(out.log_rhs);
  out.holds = out.log_lhs <= out.log_rhs + std::log1p(1e-12);
  return out;
}

ResidualPoint muntz_residual(cplx target_sigma, double a, double c0, double b,
                             int n) {
  if (!(a > 0.0 && a < 1.0)) {
    throw ValidationError("muntz.a", "must satisfy 0 < a < 1");
  }
  if (!(c0 > -1.0)) throw ValidationError("muntz.c0", "must be > -1");
  if (!(target_sigma.real() > -1.0)) {
    throw ValidationError("muntz.sigma", "Re(sigma) must be > -1");
  }
  if (n < -1) throw ValidationError("muntz.n", "must be >= -1");

  ResidualPoint out;
  out.n = n;
  if (n < 0) return out;
  std::vector<cplx> exponents;
  for (int k = 0; k <= n; ++k) exponents.emplace_back(a * k + c0, b);
  const Projection p = projection_residual(disk_gram_system(target_sigma, exponents));
  out.residual = p.residual;
  out.condition_estimate = p.condition_estimate;
  out.ill_conditioned = p.ill_conditioned;
  return out;
}

std::vector<ResidualCurve> completeness_study(
    int j, const WormParams& params, const std::vector<PowerSpec>& targets,
    int n_max, SpanParity parity) {
  if (n_max < 0) throw std::invalid_argument("completeness_study: n_max < 0");
  const bool outside = params.mu() <= kPi / 2.0;
  std::vector<ResidualCurve> curves;
  for (const auto& target : targets) {
    if (target.j != j) {
      throw std::invalid_argument("completeness_study: target not in sector j");
    }
    ResidualCurve curve;
    curve.outside_hypothesis = outside;
    std::vector<PowerSpec> basis;
    for (int n = 0; n <= n_max; ++n) {
      const bool keep = parity == SpanParity::kAll ||
                        (parity == SpanParity::kEven && n % 2 == 0) ||
                        (parity == SpanParity::kOdd && n % 2 == 1);
      if (keep) basis.push_back(resolve({n, j}, params));
      const Projection p = projection_residual(gram_system(target, basis, params));
      curve.truncation_sizes.push_back(n);
      curve.residuals.push_back(p.residual);
      curve.condition_estimates.push_back(p.condition_estimate);
      curve.ill_conditioned.push_back(p.ill_conditioned);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

ResidualCurve redundancy_study(int j, const WormParams& params, int n_max) {
  if (n_max < 1) throw std::invalid_argument("redundancy_study: n_max < 1");
  const PowerSpec target = resolve({0, j}, params);
  ResidualCurve curve;
  curve.outside_hypothesis = params.mu() < kPi / 2.0;
  std::vector<PowerSpec> basis;
  for (int n = 1; n <= n_max; ++n) {
    basis.push_back(resolve({n, j}, params));
    const Projection p = projection_residual(gram_system(target, basis, params));
    curve.truncation_sizes.push_back(n);
    curve.residuals.push_back(p.residual);
    curve.condition_estimates.push_back(p.condition_estimate);
    curve.ill_conditioned.push_back(p.ill_conditioned);
  }
  return curve;
}

}  // namespace wormkit
