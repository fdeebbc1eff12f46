#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wormkit/reduction.hpp"

namespace wormkit {

using cplx = std::complex<double>;

// Truncated worm W'_mu = { |z1 - exp(i log|z2|^2)| < 1, |log|z2|^2| < mu }
// together with the base exponent shift c0 of the H_{l,j} monomials.
class WormParams {
 public:
  // Throws ValidationError("WormParams.mu" / "WormParams.c0").
  WormParams(double mu, double c0 = 0.0);

  double mu() const noexcept { return mu_; }
  double c0() const noexcept { return c0_; }
  // Reciprocal winding number pi / (2 mu); always derived from mu.
  double nu() const noexcept;

 private:
  double mu_;
  double c0_;
};

// A point of W'_mu in fiber coordinates: z1 = zeta * e^{is}, |z2|^2 = e^s.
struct FiberPoint {
  cplx zeta;
  double s = 0.0;

  bool valid(const WormParams& params) const;
};

// Node counts are per tanh-sinh half-line (radial, angular) and per
// Gauss-Legendre panel in s. The oracles compare a run at this config with
// one at refined(); log-oscillating integrands (large |Im alpha|) need more
// radial/angular nodes before that difference drops under tolerance.
struct QuadConfig {
  int radial_nodes = 32;
  int angular_nodes = 32;
  int s_nodes = 8;
  int max_subdivision = 0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-7;
  long mc_samples = 1'000'000;
  std::uint64_t seed = 20240601;

  // Throws ValidationError("QuadConfig.<field>").
  void validate() const;
  // Same config with every node count doubled (one refinement level).
  QuadConfig refined() const;
};

struct DiskNode {
  cplx zeta;
  double weight;
};

struct WormNode {
  FiberPoint p;
  double weight;
};

// Which cubature rule to lay over the disk Delta = { |zeta - 1| < 1 }.
enum class DiskRule {
  // Polar about the center 1: Gauss-Legendre in radius (graded toward the
  // rim when max_subdivision > 0), trapezoid in angle. Exact for
  // polynomials in zeta and conj(zeta) of modest degree.
  kCentered,
  // Polar about the boundary point 0 with tanh-sinh in both radius and angle;
  // robust to the algebraic singularity of zeta^alpha at zeta = 0.
  kCorner,
};

bool in_worm(cplx z1, cplx z2, const WormParams& params);

// (zeta, s) -> (zeta e^{is}, e^{s/2}).
std::pair<cplx, cplx> fiber_to_ambient(const FiberPoint& p);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Cubature on Delta; weights sum to pi.
std::vector<DiskNode> disk_nodes(const QuadConfig& cfg,
                                 DiskRule rule = DiskRule::kCentered);

// Product of disk_nodes with composite Gauss-Legendre on (-mu, mu). The
// weights include the leading pi of the fiber reduction, so
//   sum w * f(zeta e^{is}, e^{s/2}) conj(g(...)) e^{s(j+1)}
// is the A^2(W'_mu) inner product of f z2^j and g z2^j.
std::vector<WormNode> worm_nodes(const QuadConfig& cfg,
                                 const WormParams& params,
                                 DiskRule rule = DiskRule::kCentered);

// Uniform rejection sampler over the box
// { |z1| < 2 } x { e^{-mu/2} < |z2| < e^{mu/2} }, accepting points of W'_mu.
class AmbientSampler {
 public:
  AmbientSampler(const WormParams& params, std::uint64_t seed);

  // Lebesgue volume of the sampling box in C^2.
  double box_volume() const noexcept { return box_volume_; }

  // Draw number `index`; nullopt when rejected.
  std::optional<std::pair<cplx, cplx>> draw(std::uint64_t index) const;

 private:
  WormParams params_;
  CounterRng rng_;
  double box_volume_;
};

}  // namespace wormkit
