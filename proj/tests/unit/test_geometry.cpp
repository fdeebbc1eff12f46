#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wormkit/errors.hpp"
#include "wormkit/geometry.hpp"

using namespace wormkit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(WormParams, NuIsDerivedFromMu) {
  EXPECT_DOUBLE_EQ(WormParams(kPi).nu(), 0.5);
  EXPECT_DOUBLE_EQ(WormParams(2.0 * kPi, 1.0).nu(), 0.25);
}

TEST(WormParams, RejectsBadValuesNamingTheField) {
  try {
    WormParams(-1.0);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "WormParams.mu");
  }
  EXPECT_THROW(WormParams(0.0), ValidationError);
  EXPECT_THROW(WormParams(std::nan("")), ValidationError);
  try {
    WormParams(1.0, -1.0);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "WormParams.c0");
  }
}

TEST(QuadConfig, Validation) {
  QuadConfig q;
  EXPECT_NO_THROW(q.validate());
  q.radial_nodes = 2;
  EXPECT_THROW(q.validate(), ValidationError);
  q = QuadConfig{};
  q.rel_tol = 0.0;
  EXPECT_THROW(q.validate(), ValidationError);
  q = QuadConfig{};
  q.mc_samples = 0;
  EXPECT_THROW(q.validate(), ValidationError);
}

TEST(QuadConfig, RefinedDoublesNodes) {
  const QuadConfig q;
  const QuadConfig r = q.refined();
  EXPECT_EQ(r.radial_nodes, 2 * q.radial_nodes);
  EXPECT_EQ(r.angular_nodes, 2 * q.angular_nodes);
  EXPECT_EQ(r.s_nodes, 2 * q.s_nodes);
}

TEST(InWorm, FiberCenterIsInside) {
  const WormParams p(kPi);
  // The fiber over s is centered at e^{is}.
  for (double s : {-3.0, -1.0, 0.0, 2.0, 3.1}) {
    const cplx z2 = std::exp(s / 2.0);
    EXPECT_TRUE(in_worm(std::exp(cplx(0.0, s)), z2, p)) << s;
    EXPECT_FALSE(in_worm(-std::exp(cplx(0.0, s)), z2, p)) << s;
  }
  EXPECT_FALSE(in_worm(1.0, std::exp(kPi), p));  // |log|z2|^2| = 2 pi > mu
  EXPECT_THROW(in_worm(1.0, 0.0, p), DomainError);
}

TEST(FiberPoint, ValidityAndAmbientImage) {
  const WormParams p(2.0);
  const FiberPoint ok{cplx(1.2, 0.3), 1.5};
  EXPECT_TRUE(ok.valid(p));
  EXPECT_FALSE((FiberPoint{cplx(1.2, 0.3), 2.5}).valid(p));
  EXPECT_FALSE((FiberPoint{cplx(-0.1, 0.0), 0.0}).valid(p));
  const auto [z1, z2] = fiber_to_ambient(ok);
  EXPECT_NEAR(std::abs(z1 - cplx(1.2, 0.3) * std::exp(cplx(0.0, 1.5))), 0.0, 1e-15);
  EXPECT_NEAR(std::log(std::norm(z2)), 1.5, 1e-15);
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  std::vector<double> x, w;
  gauss_legendre(6, x, w);
  ASSERT_EQ(x.size(), 6u);
  for (int deg = 0; deg <= 11; ++deg) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * std::pow(x[i], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << deg;
  }
}

TEST(DiskNodes, WeightsSumToArea) {
  const QuadConfig q;
  for (DiskRule rule : {DiskRule::kCentered, DiskRule::kCorner}) {
    double sum = 0.0;
    for (const auto& n : disk_nodes(q, rule)) {
      EXPECT_LT(std::abs(n.zeta - 1.0), 1.0 + 1e-12);
      sum += n.weight;
    }
    EXPECT_NEAR(sum, kPi, 1e-9) << static_cast<int>(rule);
  }
}

TEST(WormNodes, WeightsGiveVolume) {
  // Volume of W'_mu = pi (area of Delta) * pi * int e^s ds = 2 pi^2 sinh(mu).
  const WormParams p(kPi);
  double sum = 0.0;
  for (const auto& n : worm_nodes(QuadConfig{}, p)) sum += n.weight * std::exp(n.p.s);
  EXPECT_NEAR(sum, 2.0 * kPi * kPi * std::sinh(kPi), 1e-8);
}

TEST(AmbientSampler, DrawsAreReproducibleAndInside) {
  const WormParams p(kPi);
  const AmbientSampler a(p, 11), b(p, 11);
  int accepted = 0;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const auto x = a.draw(i);
    const auto y = b.draw(i);
    ASSERT_EQ(x.has_value(), y.has_value());
    if (!x) continue;
    ++accepted;
    EXPECT_EQ(x->first, y->first);
    EXPECT_TRUE(in_worm(x->first, x->second, p));
  }
  // Acceptance = volume / box volume = 2 pi^2 sinh(mu) / (8 pi^2 sinh(mu)) = 1/4.
  EXPECT_NEAR(accepted / 20000.0, 0.25, 0.015);
  EXPECT_NEAR(a.box_volume(), 8.0 * kPi * kPi * std::sinh(kPi), 1e-9);
}
