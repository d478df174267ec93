#include <gtest/gtest.h>

#include <cmath>

#include "plateopt/heaviside.hpp"

using namespace plateopt;

TEST(Heaviside, ExponentialValues) {
  const HeavisideProfile h(HeavisideKind::exponential, 0.1);
  EXPECT_DOUBLE_EQ(h.value(0.0), 0.5);
  EXPECT_NEAR(h.value(0.1), 1 - 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(h.value(-0.1), 0.5 * std::exp(-1.0), 1e-15);
  EXPECT_LT(h.value(-50.0), 1e-200);
  EXPECT_EQ(h.value(50.0), 1.0);
  for (double r : {-0.3, -0.01, 0.02, 0.5}) EXPECT_NEAR(h.value(r) + h.value(-r), 1.0, 1e-15);
}

TEST(Heaviside, PolynomialValues) {
  const double eps = 0.2;
  const HeavisideProfile h(HeavisideKind::polynomial, eps);
  EXPECT_EQ(h.value(-eps), 0.0);
  EXPECT_EQ(h.value(-1.0), 0.0);
  EXPECT_EQ(h.value(0.0), 1.0);
  EXPECT_EQ(h.value(0.3), 1.0);
  EXPECT_NEAR(h.value(-eps / 2), 0.5, 1e-15);
  EXPECT_NEAR(h.derivative(-eps / 2), 1.5 / eps, 1e-12);
  EXPECT_EQ(h.derivative(0.1), 0.0);
}

TEST(Heaviside, DerivativeMatchesFiniteDifferences) {
  for (auto kind : {HeavisideKind::exponential, HeavisideKind::polynomial}) {
    const double eps = 0.05;
    const HeavisideProfile h(kind, eps);
    for (double r = -0.045; r < 0.1; r += 0.0137) {
      const double d = 1e-7;
      EXPECT_NEAR(h.derivative(r), (h.value(r + d) - h.value(r - d)) / (2 * d), 1e-5 / eps) << to_string(kind) << r;
    }
  }
}

TEST(Heaviside, MonotoneAndBounded) {
  for (auto kind : {HeavisideKind::exponential, HeavisideKind::polynomial}) {
    const HeavisideProfile h(kind, 1e-3);
    double prev = -1;
    for (double r = -0.01; r <= 0.01; r += 1e-5) {
      const double v = h.value(r);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      EXPECT_GE(v, prev);
      EXPECT_GE(h.derivative(r), 0.0);
      prev = v;
    }
  }
  EXPECT_TRUE(HeavisideProfile(HeavisideKind::exponential, 1).strictly_increasing());
  EXPECT_FALSE(HeavisideProfile(HeavisideKind::polynomial, 1).strictly_increasing());
}

TEST(Heaviside, RejectsNonPositiveEpsilon) {
  EXPECT_THROW(HeavisideProfile(HeavisideKind::exponential, 0.0), std::invalid_argument);
  EXPECT_THROW(HeavisideProfile(HeavisideKind::polynomial, -1e-3), std::invalid_argument);
}

TEST(Heaviside, Names) {
  EXPECT_EQ(heaviside_kind_from_name("polynomial"), HeavisideKind::polynomial);
  EXPECT_EQ(to_string(HeavisideKind::exponential), "exponential");
  EXPECT_THROW((void)heaviside_kind_from_name("tanh"), std::invalid_argument);
}

TEST(Saturation, OddIncreasingBounded) {
  EXPECT_EQ(saturate(0.0), 0.0);
  double prev = -1.0;
  for (double r = -40; r <= 40; r += 0.01) {
    const double v = saturate(r);
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
    EXPECT_NEAR(v, -saturate(-r), 1e-15);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(saturate(1e-9), 1e-9, 1e-17);
  EXPECT_LT(std::abs(saturate(0.5)), 1.0);
  EXPECT_NEAR(saturate(-1.0), std::exp(-1.0) - 1.0, 1e-15);
}
