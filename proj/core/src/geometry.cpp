#include "wormkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "wormkit/errors.hpp"

namespace wormkit {
namespace {

constexpr double kPi = std::numbers::pi;

// Tanh-sinh nodes on (0, length): positions, their distance from 0, weights.
// Positions near either end are formed without cancellation.
struct DeRule {
  std::vector<double> x;
  std::vector<double> w;
};

constexpr double kDeHalfWidth = 4.0;

DeRule tanh_sinh(int n_per_side, double length) {
  DeRule rule;
  const double h = kDeHalfWidth / n_per_side;
  for (int k = -n_per_side; k <= n_per_side; ++k) {
    const double t = k * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double c = std::cosh(u);
    rule.x.push_back(length / (1.0 + std::exp(-2.0 * u)));
    rule.w.push_back(h * length * 0.5 * kPi * std::cosh(t) / (2.0 * c * c));
  }
  return rule;
}

void check(bool ok, const char* field, const std::string& what) {
  if (!ok) throw ValidationError(field, what);
}

}  // namespace

WormParams::WormParams(double mu, double c0) : mu_(mu), c0_(c0) {
  if (!(std::isfinite(mu) && mu > 0.0)) {
    std::ostringstream os;
    os << "must be a finite positive number (got " << mu << ")";
    throw ValidationError("WormParams.mu", os.str());
  }
  if (!(std::isfinite(c0) && c0 > -1.0)) {
    std::ostringstream os;
    os << "must be finite and > -1 (got " << c0 << ")";
    throw ValidationError("WormParams.c0", os.str());
  }
}

double WormParams::nu() const noexcept { return kPi / (2.0 * mu_); }

bool FiberPoint::valid(const WormParams& params) const {
  return std::abs(zeta - 1.0) < 1.0 && std::abs(s) < params.mu();
}

void QuadConfig::validate() const {
  check(radial_nodes >= 4, "QuadConfig.radial_nodes", "must be >= 4");
  check(angular_nodes >= 4, "QuadConfig.angular_nodes", "must be >= 4");
  check(s_nodes >= 4, "QuadConfig.s_nodes", "must be >= 4");
  check(max_subdivision >= 0 && max_subdivision <= 40,
        "QuadConfig.max_subdivision", "must be in [0, 40]");
  check(abs_tol > 0.0 && abs_tol < 1.0, "QuadConfig.abs_tol",
        "must be in (0, 1)");
  check(rel_tol > 0.0 && rel_tol < 1.0, "QuadConfig.rel_tol",
        "must be in (0, 1)");
  check(mc_samples >= 1, "QuadConfig.mc_samples", "must be positive");
}

QuadConfig QuadConfig::refined() const {
  QuadConfig out = *this;
  out.radial_nodes *= 2;
  out.angular_nodes *= 2;
  out.s_nodes *= 2;
  return out;
}

bool in_worm(cplx z1, cplx z2, const WormParams& params) {
  if (z2 == cplx(0.0)) {
    throw DomainError("in_worm: z2 = 0 (log|z2|^2 undefined)");
  }
  const double s = 2.0 * std::log(std::abs(z2));
  return std::abs(s) < params.mu() &&
         std::abs(z1 - std::polar(1.0, s)) < 1.0;
}

std::pair<cplx, cplx> fiber_to_ambient(const FiberPoint& p) {
  return {p.zeta * std::polar(1.0, p.s), cplx(std::exp(0.5 * p.s), 0.0)};
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

std::vector<DiskNode> disk_nodes(const QuadConfig& cfg, DiskRule rule) {
  cfg.validate();
  std::vector<DiskNode> out;

  if (rule == DiskRule::kCentered) {
    std::vector<double> breaks{0.0};
    for (int level = 1; level <= cfg.max_subdivision; ++level) {
      breaks.push_back(1.0 - std::ldexp(1.0, -level));
    }
    breaks.push_back(1.0);

    std::vector<double> gx, gw;
    gauss_legendre(cfg.radial_nodes, gx, gw);
    const int n_theta = cfg.angular_nodes;
    const double w_theta = 2.0 * kPi / n_theta;
    out.reserve((breaks.size() - 1) * gx.size() * n_theta);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
      const double half = 0.5 * (breaks[p + 1] - breaks[p]);
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double rho = mid + half * gx[i];
        const double w_rho = half * gw[i] * rho;
        for (int k = 0; k < n_theta; ++k) {
          out.push_back({1.0 + std::polar(rho, w_theta * k), w_rho * w_theta});
        }
      }
    }
    return out;
  }

  // Corner rule: zeta = r e^{i theta}, |theta| < pi/2, 0 < r < 2 cos(theta).
  const int n_theta = cfg.angular_nodes;
  const double h = kDeHalfWidth / n_theta;
  const DeRule unit_r = tanh_sinh(cfg.radial_nodes, 1.0);
  out.reserve((2 * n_theta + 1) * unit_r.x.size());
  for (int k = -n_theta; k <= n_theta; ++k) {
    const double t = k * h;
    const double u = 0.5 * kPi * std::sinh(t);
    const double c = std::cosh(u);
    // Distance of theta from the nearer end +-pi/2, without cancellation.
    const double gap = kPi / (1.0 + std::exp(2.0 * std::abs(u)));
    const double theta = std::copysign(0.5 * kPi - gap, u);
    const double w_theta = h * kPi * 0.5 * kPi * std::cosh(t) / (2.0 * c * c);
    const double r_max = 2.0 * std::sin(gap);
    if (w_theta == 0.0 || r_max == 0.0) continue;
    const cplx dir = std::polar(1.0, theta);
    for (std::size_t i = 0; i < unit_r.x.size(); ++i) {
      const double r = r_max * unit_r.x[i];
      const double w = w_theta * r_max * unit_r.w[i] * r;
      if (w == 0.0) continue;
      out.push_back({r * dir, w});
    }
  }
  return out;
}

std::vector<WormNode> worm_nodes(const QuadConfig& cfg,
                                 const WormParams& params, DiskRule rule) {
  const std::vector<DiskNode> disk = disk_nodes(cfg, rule);

  std::vector<double> gx, gw;
  gauss_legendre(cfg.s_nodes, gx, gw);
  const double mu = params.mu();
  const int n_panels = std::max(2, static_cast<int>(std::ceil(mu)));
  const double width = 2.0 * mu / n_panels;

  std::vector<std::pair<double, double>> s_rule;
  for (int p = 0; p < n_panels; ++p) {
    const double mid = -mu + (p + 0.5) * width;
    for (std::size_t i = 0; i < gx.size(); ++i) {
      s_rule.emplace_back(mid + 0.5 * width * gx[i], 0.5 * width * gw[i]);
    }
  }

  std::vector<WormNode> out;
  out.reserve(disk.size() * s_rule.size());
  for (const auto& d : disk) {
    for (const auto& [s, ws] : s_rule) {
      out.push_back({FiberPoint{d.zeta, s}, kPi * d.weight * ws});
    }
  }
  return out;
}

AmbientSampler::AmbientSampler(const WormParams& params, std::uint64_t seed)
    : params_(params), rng_(seed) {
  const double mu = params.mu();
  box_volume_ = 4.0 * kPi * kPi * (std::exp(mu) - std::exp(-mu));
}

std::optional<std::pair<cplx, cplx>> AmbientSampler::draw(
    std::uint64_t index) const {
  const std::uint64_t base = 4 * index;
  const double mu = params_.mu();
  const cplx z1 = std::polar(2.0 * std::sqrt(rng_.uniform(base)),
                             2.0 * kPi * rng_.uniform(base + 1));
  const double lo = std::exp(-mu);
  const double r2 = lo + rng_.uniform(base + 2) * (std::exp(mu) - lo);
  const cplx z2 = std::polar(std::sqrt(r2), 2.0 * kPi * rng_.uniform(base + 3));
  if (!in_worm(z1, z2, params_)) return std::nullopt;
  return std::make_pair(z1, z2);
}

}  // namespace wormkit
