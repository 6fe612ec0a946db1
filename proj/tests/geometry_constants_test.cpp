#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "geominimax/error.hpp"
#include "geominimax/geometry_constants.hpp"
#include "geominimax/manifolds.hpp"

namespace geominimax {
namespace {

using std::numbers::pi;

// Independent scalar oracles built from cosh / sinh / cos / sin.
double x_coth(double x) { return x * std::cosh(x) / std::sinh(x); }
double x_cot(double x) { return x * std::cos(x) / std::sin(x); }

TEST(Zeta, Examples) {
  EXPECT_EQ(zeta(0.0, 2.7), 1.0);
  EXPECT_NEAR(zeta(-1.0, 1.0), x_coth(1.0), 1e-14);
  EXPECT_NEAR(zeta(-1.0, 1.0), 1.31304, 1e-5);
  EXPECT_NEAR(zeta(-4.0, 0.5), x_coth(1.0), 1e-14);
  EXPECT_THROW(zeta(0.5, 1.0), Error);
}

TEST(Zeta, SmallArgumentSeries) {
  for (double x : {1e-3, 1e-4, 5e-5, 1e-6, 1e-9}) {
    EXPECT_NEAR(zeta(-1.0, x), 1.0 + x * x / 3.0 - x * x * x * x / 45.0, 1e-15);
  }
  EXPECT_NEAR(zeta(-1.0, 1e-3), x_coth(1e-3), 1e-13);
}

TEST(Xi, Examples) {
  EXPECT_EQ(xi(0.0, 5.0), 1.0);
  EXPECT_NEAR(xi(1.0, pi / 4), pi / 4, 1e-15);
  EXPECT_NEAR(xi(1.0, pi / 4), 0.78540, 1e-5);
  EXPECT_NEAR(xi(-1.0, 1.0), x_coth(1.0), 1e-14);
  EXPECT_NEAR(xi(4.0, 0.3), x_cot(0.6), 1e-14);
  EXPECT_THROW(xi(1.0, pi / 2), Error);
  EXPECT_THROW(xi(4.0, 1.0), Error);
}

TEST(Tau, Examples) {
  EXPECT_EQ(tau(CurvatureBounds{0.0, 0.0, 3.0}), 1.0);
  EXPECT_NEAR(tau(CurvatureBounds{-1.0, 0.0, 1.0}), x_coth(1.0), 1e-14);
  EXPECT_NEAR(tau(CurvatureBounds{-1.0, 1.0, pi / 4}), std::cosh(pi / 4) / std::sinh(pi / 4), 1e-14);
  EXPECT_NEAR(tau(CurvatureBounds{-1.0, 1.0, pi / 4}), 1.52487, 1e-5);
}

TEST(Tau, Consistency) {
  for (double km : {0.0, -0.5, -1.0, -3.0}) {
    for (double kM : {-0.2, 0.0, 0.5, 1.0}) {
      if (km > kM) continue;
      for (double c : {0.1, 0.5, 1.0, 1.4}) {
        if (kM > 0 && std::sqrt(kM) * c >= pi / 2) continue;
        const CurvatureBounds b{km, kM, c};
        ASSERT_NEAR(tau(b) * xi(kM, c), zeta(km, c), 1e-12);
        ASSERT_GE(tau(b), 1.0 - 1e-15);
      }
    }
  }
}

TEST(Tau, InvalidBounds) {
  EXPECT_THROW(tau(CurvatureBounds{0.5, 1.0, 1.0}), Error);
  EXPECT_THROW(tau(CurvatureBounds{-1.0, -2.0, 1.0}), Error);
  EXPECT_THROW(tau(CurvatureBounds{-1.0, 1.0, 2.0}), Error);
  EXPECT_THROW(tau(CurvatureBounds{-1.0, 0.0, 0.0}), Error);
}

TEST(StepSize, Examples) {
  EXPECT_EQ(rceg_step_size(1.0, 1.0, 1.0), 0.5);
  EXPECT_EQ(rceg_step_size(2.0, 4.0, 1.0), 0.125);
  EXPECT_NEAR(rceg_step_size(1.0, x_coth(1.0), 1.0), 1.0 / (2.0 * std::sqrt(x_coth(1.0))), 1e-15);
  EXPECT_NEAR(rceg_step_size(1.0, x_coth(1.0), 1.0), 0.436347, 1e-6);
  EXPECT_THROW(rceg_step_size(0.0, 1.0, 1.0), Error);
  EXPECT_THROW(rceg_step_size(-1.0, 1.0, 1.0), Error);
}

TEST(Monotonicity, ZetaXiGrid) {
  for (double k = 0.0; k <= 4.0; k += 0.25) {
    for (double c = 0.05; c <= 3.0; c += 0.05) {
      ASSERT_LE(zeta(-k, c), zeta(-k, c + 0.05) + 1e-15);
      ASSERT_LE(zeta(-k, c), zeta(-(k + 0.25), c) + 1e-15);
    }
  }
  for (double k : {0.25, 1.0, 4.0}) {
    for (double c = 0.01; std::sqrt(k) * (c + 0.01) < pi / 2; c += 0.01) {
      ASSERT_GT(xi(k, c), xi(k, c + 0.01));
    }
  }
}

TEST(Monotonicity, StepSize) {
  double prev = rceg_step_size(0.5, 1.0, 1.0);
  for (double l = 0.6; l < 5.0; l += 0.1) {
    const double cur = rceg_step_size(l, 1.0, 1.0);
    ASSERT_LT(cur, prev);
    prev = cur;
  }
  for (double t = 1.1; t < 5.0; t += 0.1) {
    ASSERT_LT(rceg_step_size(1.0, t, 1.0), rceg_step_size(1.0, t - 0.1, 1.0));
    ASSERT_LT(rceg_step_size(1.0, 1.0, t), rceg_step_size(1.0, 1.0, t - 0.1));
  }
}

TEST(BoundsOf, ReadsManifoldMetadata) {
  const SpdManifold p(3, 2.5);
  const CurvatureBounds b = bounds_of(p);
  EXPECT_EQ(b.kappa_min, -0.5);
  EXPECT_EQ(b.kappa_max, 0.0);
  EXPECT_EQ(b.c, 2.5);
}

TEST(Triangles, EuclideanIsTight) {
  Rng rng(1);
  const auto r = check_triangle_comparison(EuclideanSpace(5, 4.0), 1000, rng);
  EXPECT_EQ(r.violations_lower, 0u);
  EXPECT_EQ(r.violations_upper, 0u);
  EXPECT_LE(std::abs(r.worst_lower), 1e-9);
  EXPECT_LE(std::abs(r.worst_upper), 1e-9);
}

TEST(Triangles, SpdAndSphere) {
  Rng rng(2);
  const auto spd = check_triangle_comparison(SpdManifold(3, 4.0), 1000, rng);
  EXPECT_EQ(spd.violations_lower + spd.violations_upper, 0u);
  const auto s3 = check_triangle_comparison(Sphere(3, pi / 4), 1000, rng);
  EXPECT_EQ(s3.violations_lower + s3.violations_upper, 0u);
  EXPECT_EQ(s3.trials, 1000u);
}

TEST(Triangles, DeterministicPerSeed) {
  Rng a(3), b(3);
  const auto r1 = check_triangle_comparison(SpdManifold(3), 100, a);
  const auto r2 = check_triangle_comparison(SpdManifold(3), 100, b);
  EXPECT_EQ(r1.max_slack, r2.max_slack);
}

}  // namespace
}  // namespace geominimax
