// Randomized invariants. Every sweep uses a fixed seed so failures reproduce.
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "wormkit/diagnostics.hpp"
#include "wormkit/errors.hpp"
#include "wormkit/quadrature.hpp"
#include "wormkit/special_fn.hpp"

using namespace wormkit;
using special::LogComplex;

namespace {

constexpr double kPi = std::numbers::pi;

class Sweep : public ::testing::Test {
 protected:
  std::mt19937_64 rng{20240601};
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  cplx point(double re_lo, double re_hi, double im_lo, double im_hi) {
    return {uniform(re_lo, re_hi), uniform(im_lo, im_hi)};
  }
  WormParams worm() {
    const double mus[] = {kPi / 2.0 + 0.1, kPi, 2.0 * kPi};
    const double c0s[] = {-0.5, 0.0, 1.0};
    return WormParams(mus[integer(0, 2)], c0s[integer(0, 2)]);
  }
};

double phase_gap(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

}  // namespace

TEST_F(Sweep, LogGammaRecurrence) {
  for (int i = 0; i < 2000; ++i) {
    const cplx z = point(-8.0, 30.0, -40.0, 40.0);
    if (std::abs(z.imag()) < 1e-3 && z.real() < 0.5) continue;
    const LogComplex g = special::log_gamma(z);
    const LogComplex g1 = special::log_gamma(z + 1.0);
    const cplx lz = std::log(z);
    EXPECT_NEAR(g1.log_modulus - g.log_modulus, lz.real(),
                1e-11 * std::max(1.0, std::abs(g.log_modulus)))
        << z;
    EXPECT_LT(phase_gap(g1.phase - g.phase, lz.imag()), 1e-10 * std::max(1.0, std::abs(z)))
        << z;
  }
}

TEST_F(Sweep, LogGammaConjugationAndReflection) {
  for (int i = 0; i < 1000; ++i) {
    const cplx z = point(-5.0, 5.0, -6.0, 6.0);
    if (std::abs(z.imag()) < 1e-2) continue;
    const LogComplex g = special::log_gamma(z);
    const LogComplex gc = special::log_gamma(std::conj(z));
    EXPECT_NEAR(g.log_modulus, gc.log_modulus, 1e-12 * std::max(1.0, std::abs(g.log_modulus)));
    EXPECT_LT(phase_gap(g.phase, -gc.phase), 1e-11);
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    const LogComplex h = special::log_gamma(1.0 - z);
    const cplx refl = std::log(kPi / std::sin(kPi * z));
    EXPECT_NEAR(g.log_modulus + h.log_modulus, refl.real(), 1e-11 * std::max(1.0, std::abs(refl.real())));
    EXPECT_LT(phase_gap(g.phase + h.phase, refl.imag()), 1e-10);
  }
}

TEST_F(Sweep, SinhRatioContinuousAcrossBranches) {
  const double mu = 2.0;
  for (int i = 0; i < 500; ++i) {
    // Around the Taylor switch |mu w| = 1e-3.
    const double theta = uniform(-kPi, kPi);
    const cplx w_in = std::polar(0.999e-3 / mu, theta);
    const cplx w_out = std::polar(1.001e-3 / mu, theta);
    const cplx d_in = special::sinh_ratio(w_in, mu);
    const cplx d_out = special::sinh_ratio(w_out, mu);
    EXPECT_LT(std::abs(d_in - std::sinh(mu * w_in) / w_in), 1e-13);
    EXPECT_LT(std::abs(d_out - d_in), 1e-6);
    // Around the switch to the log path, Re(mu w) = 20.
    const double im = uniform(-30.0, 30.0);
    const cplx a(19.999 / mu, im), b(20.001 / mu, im);
    const LogComplex la = special::log_sinh_ratio(a, mu);
    const cplx direct = std::log(std::sinh(mu * a) / a);
    EXPECT_NEAR(la.log_modulus, direct.real(), 1e-12 * std::abs(direct.real()));
    EXPECT_LT(phase_gap(la.phase, direct.imag()), 1e-10);
    const LogComplex lb = special::log_sinh_ratio(b, mu);
    EXPECT_NEAR(lb.log_modulus - la.log_modulus, 0.002, 1e-4);
  }
}

TEST_F(Sweep, HermitianSymmetry) {
  for (int i = 0; i < 500; ++i) {
    const cplx a = point(-0.9, 6.0, -4.0, 4.0), b = point(-0.9, 6.0, -4.0, 4.0);
    EXPECT_LT(std::abs(disk_inner(a, b) - std::conj(disk_inner(b, a))),
              1e-12 * std::abs(disk_inner(a, b)));
    const WormParams p = worm();
    const int j = integer(-3, 3);
    const cplx nab = normalized_worm_inner({a, j}, {b, j}, p);
    const cplx nba = normalized_worm_inner({b, j}, {a, j}, p);
    EXPECT_LT(std::abs(nab - std::conj(nba)), 1e-12);
    EXPECT_LE(std::abs(nab), 1.0 + 1e-12);  // Cauchy-Schwarz
    EXPECT_GT(worm_norm_sq({a, j}, p), 0.0);
  }
}

TEST_F(Sweep, FiberImageLiesInWorm) {
  for (int i = 0; i < 5000; ++i) {
    const WormParams p = worm();
    const FiberPoint fp{1.0 + std::polar(uniform(0.0, 0.999), uniform(-kPi, kPi)),
                        uniform(-0.999, 0.999) * p.mu()};
    ASSERT_TRUE(fp.valid(p));
    const auto [z1, z2] = fiber_to_ambient(fp);
    EXPECT_TRUE(in_worm(z1, z2, p));
  }
}

TEST(CenteredRule, ExactOnLowDegreePolynomials) {
  const auto nodes = disk_nodes(QuadConfig{}, DiskRule::kCentered);
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= 6; ++b) {
      cplx sum = 0.0;
      for (const auto& n : nodes) {
        sum += n.weight * std::pow(n.zeta, a) * std::pow(std::conj(n.zeta), b);
      }
      const cplx exact = disk_inner(a, b);
      EXPECT_LT(std::abs(sum - exact), 1e-12 * std::abs(exact)) << a << "," << b;
    }
  }
}

TEST_F(Sweep, GramMatricesArePositiveSemidefinite) {
  for (int i = 0; i < 60; ++i) {
    const WormParams p = worm();
    const int j = integer(-3, 3);
    std::vector<PowerSpec> basis;
    const int n = integer(2, 16);
    for (int k = 0; k < n; ++k) basis.push_back({point(-0.9, 8.0, -3.0, 3.0), j});
    EXPECT_GE(min_eigenvalue(gram_system(basis[0], basis, p)), -1e-10);
    std::vector<cplx> exps;
    for (int k = 0; k < n; ++k) exps.push_back(point(-0.9, 8.0, -3.0, 3.0));
    EXPECT_GE(min_eigenvalue(disk_gram_system(exps[0], exps)), -1e-10);
  }
}

TEST_F(Sweep, NestedResidualsNeverIncrease) {
  for (int i = 0; i < 20; ++i) {
    const WormParams p = worm();
    const int j = integer(-3, 3);
    const PowerSpec target{{p.c0() + uniform(0.0, 3.0), uniform(-2.0, 2.0)}, j};
    const auto c = completeness_study(j, p, {target}, 16)[0];
    for (std::size_t n = 1; n < c.residuals.size(); ++n) {
      EXPECT_LE(c.residuals[n], c.residuals[n - 1] + 1e-10) << n;
      EXPECT_GE(c.residuals[n], 0.0);
    }
    const ResidualCurve r = redundancy_study(j, p, 12);
    for (std::size_t n = 1; n < r.residuals.size(); ++n) {
      EXPECT_LE(r.residuals[n], r.residuals[n - 1] + 1e-10) << n;
    }
  }
}

TEST_F(Sweep, IsOrthogonalCharacterizesZeros) {
  int zeros = 0;
  for (int i = 0; i < 500; ++i) {
    const WormParams p = worm();
    const int j = integer(-3, 3);
    const PowerSpec a = resolve({integer(0, 12), j}, p);
    const PowerSpec b = resolve({integer(0, 12), j}, p);
    const bool zero = std::abs(normalized_worm_inner(a, b, p)) < 1e-10;
    EXPECT_EQ(is_orthogonal(a, b, p), zero);
    zeros += zero;
  }
  EXPECT_GT(zeros, 100);
}

TEST_F(Sweep, GammaCauchySchwarz) {
  for (int i = 0; i < 10000; ++i) {
    const double c = uniform(0.0, 5.0), x = uniform(1e-9, 5.0), y = uniform(1e-9, 5.0);
    ASSERT_TRUE(gamma_cs_check(c, x, y).holds) << c << " " << x << " " << y;
  }
}

TEST_F(Sweep, BoundChainOrdering) {
  for (int i = 0; i < 40; ++i) {
    const WormParams p = worm();
    const int m = integer(0, 4), j = integer(-2, 2);
    const BoundChain c = bessel_bound_chain(m, j, p, 50);
    EXPECT_LE(c.normalized_bessel, c.sine_weighted_sum * (1 + 1e-10));
    EXPECT_LE(c.sine_weighted_sum, c.gamma_bound_sum * (1 + 1e-10));
    EXPECT_LT(c.gamma_bound_sum, 1.0);
  }
}

TEST_F(Sweep, EvenOnlyFloorMatchesBesselDefect) {
  for (int i = 0; i < 10; ++i) {
    const WormParams p = worm();
    const int m = integer(0, 3), j = integer(-2, 2);
    const int k_max = 30;
    const BesselDefect d = bessel_defect(m, j, p, k_max);
    // Even span {H(0), H(2), ..., H(2 k_max)}; the family is orthogonal, so
    // the squared residual is exactly 1 - rhs_partial / lhs.
    const auto c = completeness_study(j, p, {resolve({2 * m + 1, j}, p)}, 2 * k_max,
                                      SpanParity::kEven)[0];
    const double floor_sq = c.residuals.back() * c.residuals.back();
    EXPECT_NEAR(floor_sq, 1.0 - d.rhs_partial / d.lhs, 1e-10);
    EXPECT_GE(floor_sq, d.relative_margin - 1e-10);
    EXPECT_LE(floor_sq - d.relative_margin, d.tail_bound / d.lhs + 1e-10);
  }
}

TEST(Reproducibility, MonteCarloIndependentOfThreads) {
  const WormParams p(kPi);
  QuadConfig q;
  q.mc_samples = 100'000;
  ::setenv("WORMKIT_THREADS", "1", 1);
  const OracleResult one = mc_worm_inner({0.5, 1}, {{1.0, 0.5}, 1}, p, q);
  ::setenv("WORMKIT_THREADS", "3", 1);
  const OracleResult three = mc_worm_inner({0.5, 1}, {{1.0, 0.5}, 1}, p, q);
  ::unsetenv("WORMKIT_THREADS");
  EXPECT_EQ(one.value, three.value);
  EXPECT_EQ(one.abs_error_estimate, three.abs_error_estimate);
}
