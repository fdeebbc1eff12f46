#include "wormkit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wormkit/errors.hpp"
#include "wormkit/reduction.hpp"

namespace wormkit {
namespace {

// Quadrature sum of f together with the sum of |f|; the latter sets the
// relative-tolerance scale, so cancelling integrands (near-orthogonal pairs)
// are judged against the size of what cancels.
struct Level {
  cplx value;
  double magnitude = 0.0;
  Level operator+(const Level& o) const {
    return {value + o.value, magnitude + o.magnitude};
  }
  Level& operator+=(const Level& o) { return *this = *this + o; }
};

template <typename Integrand>
Level integrate_disk(const std::vector<DiskNode>& nodes, Integrand&& f) {
  return deterministic_sum<Level>(nodes.size(), [&](std::size_t i) {
    const cplx v = nodes[i].weight * f(nodes[i].zeta);
    return Level{v, std::abs(v)};
  });
}

OracleResult two_level(const Level& coarse, const Level& fine, long evaluations,
                       const QuadConfig& cfg, const char* who) {
  const double diff = std::abs(fine.value - coarse.value);
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * fine.magnitude);
  if (!(diff <= 10.0 * tol)) {
    std::ostringstream os;
    os << who << ": refinement levels differ by " << diff
       << " (tolerance " << tol << ")";
    throw NonConvergenceError(os.str());
  }
  return {fine.value, diff, evaluations, 1.0};
}

cplx power(cplx zeta, cplx alpha) { return std::exp(alpha * std::log(zeta)); }

}  // namespace

OracleResult quad_disk_inner(cplx alpha, cplx beta, const QuadConfig& cfg) {
  PowerSpec{alpha, 0}.validate();
  PowerSpec{beta, 0}.validate();
  auto integrand = [&](cplx zeta) {
    return power(zeta, alpha) * std::conj(power(zeta, beta));
  };
  const auto coarse_nodes = disk_nodes(cfg, DiskRule::kCorner);
  const auto fine_nodes = disk_nodes(cfg.refined(), DiskRule::kCorner);
  const Level coarse = integrate_disk(coarse_nodes, integrand);
  const Level fine = integrate_disk(fine_nodes, integrand);
  return two_level(coarse, fine,
                   static_cast<long>(coarse_nodes.size() + fine_nodes.size()),
                   cfg, "quad_disk_inner");
}

OracleResult quad_worm_inner(const PowerSpec& a, const PowerSpec& b,
                             const WormParams& params, const QuadConfig& cfg) {
  if (a.j != b.j) {
    throw std::invalid_argument("quad_worm_inner: specs in different sectors");
  }
  a.validate();
  b.validate();
  auto level = [&](const QuadConfig& c, long& evals) {
    const auto nodes = worm_nodes(c, params, DiskRule::kCorner);
    evals += static_cast<long>(nodes.size());
    return deterministic_sum<Level>(nodes.size(), [&](std::size_t i) {
      const WormNode& n = nodes[i];
      const auto [z1, z2] = fiber_to_ambient(n.p);
      // F_a conj(F_b) = exp(alpha L) conj(exp(beta L)) |z2|^{2j}, with L
      // shared by both factors.
      const cplx L = eval_L(z1, z2);
      const cplx v = n.weight * std::exp(a.alpha * L) *
                     std::conj(std::exp(b.alpha * L)) * std::exp(n.p.s * (a.j + 1));
      return Level{v, std::abs(v)};
    });
  };
  long evals = 0;
  const Level coarse = level(cfg, evals);
  const Level fine = level(cfg.refined(), evals);
  return two_level(coarse, fine, evals, cfg, "quad_worm_inner");
}

OracleResult mc_worm_inner(const PowerSpec& a, const PowerSpec& b,
                           const WormParams& params, const QuadConfig& cfg) {
  if (a.j != b.j) {
    throw std::invalid_argument("mc_worm_inner: specs in different sectors");
  }
  a.validate();
  b.validate();
  cfg.validate();

  struct Moments {
    double re = 0.0, im = 0.0, re2 = 0.0, im2 = 0.0, hits = 0.0;
    Moments& operator+=(const Moments& o) {
      re += o.re;
      im += o.im;
      re2 += o.re2;
      im2 += o.im2;
      hits += o.hits;
      return *this;
    }
    Moments operator+(const Moments& o) const {
      Moments r = *this;
      return r += o;
    }
  };

  const AmbientSampler sampler(params, cfg.seed);
  const auto n = static_cast<std::size_t>(cfg.mc_samples);
  const Moments m = deterministic_sum<Moments>(n, [&](std::size_t i) {
    Moments out;
    const auto point = sampler.draw(i);
    if (!point) return out;
    const auto [z1, z2] = *point;
    const cplx v = eval_F(a, z1, z2) * std::conj(eval_F(b, z1, z2));
    out.re = v.real();
    out.im = v.imag();
    out.re2 = v.real() * v.real();
    out.im2 = v.imag() * v.imag();
    out.hits = 1.0;
    return out;
  });

  const double N = static_cast<double>(n);
  const double acceptance = m.hits / N;
  if (acceptance < 0.01) {
    std::ostringstream os;
    os << "mc_worm_inner: acceptance rate " << acceptance << " below 1%";
    throw NonConvergenceError(os.str());
  }
  const double mean_re = m.re / N;
  const double mean_im = m.im / N;
  const double var = std::max(0.0, m.re2 / N - mean_re * mean_re) +
                     std::max(0.0, m.im2 / N - mean_im * mean_im);
  const double vol = sampler.box_volume();
  OracleResult r;
  r.value = vol * cplx(mean_re, mean_im);
  r.abs_error_estimate = vol * std::sqrt(var / std::max(1.0, N - 1.0));
  r.evaluations = static_cast<long>(m.hits);
  r.acceptance_rate = acceptance;
  return r;
}

cplx q_project(const AmbientFunction& f, int j, cplx z1, double r2,
               int n_angle) {
  if (n_angle < 8) throw std::invalid_argument("q_project: n_angle must be >= 8");
  if (!(r2 > 0.0)) throw DomainError("q_project: r2 must be positive");
  const double radius = std::sqrt(r2);
  const double step = 2.0 * std::numbers::pi / n_angle;
  std::vector<cplx> terms(n_angle);
  for (int k = 0; k < n_angle; ++k) {
    const double t = -std::numbers::pi + k * step;
    terms[k] = f(z1, std::polar(radius, t)) * std::polar(1.0, -j * t);
  }
  return pairwise_sum(terms) / static_cast<double>(n_angle);
}

}  // namespace wormkit
