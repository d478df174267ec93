#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "plateopt/expression.hpp"

using namespace plateopt;

namespace {

double eval(const char* src, Point2 x = {}) { return Expression::parse(src)(x); }

}  // namespace

TEST(Expression, Arithmetic) {
  EXPECT_DOUBLE_EQ(eval("1 + 2 * 3"), 7.0);
  EXPECT_DOUBLE_EQ(eval("(1 + 2) * 3"), 9.0);
  EXPECT_DOUBLE_EQ(eval("1/16"), 0.0625);
  EXPECT_DOUBLE_EQ(eval("8 - 3 - 2"), 3.0);
  EXPECT_DOUBLE_EQ(eval("2e3"), 2000.0);
  EXPECT_DOUBLE_EQ(eval("1.5e-2*100"), 1.5);
}

TEST(Expression, PowerBindsTighterThanUnaryMinus) {
  EXPECT_DOUBLE_EQ(eval("-2^2"), -4.0);
  EXPECT_DOUBLE_EQ(eval("2^3^2"), 512.0);
  EXPECT_DOUBLE_EQ(eval("(-2)^2"), 4.0);
  EXPECT_DOUBLE_EQ(eval("2^-1"), 0.5);
}

TEST(Expression, Variables) {
  const Point2 x{0.25, -0.5};
  EXPECT_DOUBLE_EQ(eval("x1", x), 0.25);
  EXPECT_DOUBLE_EQ(eval("-(x1-0.5)^2-(x2-0.5)^2+1/16", x), -0.0625 - 1.0 + 0.0625);
  EXPECT_DOUBLE_EQ(eval("-x1^2-x2^2+3/4", x), 0.75 - 0.0625 - 0.25);
}

TEST(Expression, Functions) {
  const Point2 x{0.3, -0.7};
  EXPECT_DOUBLE_EQ(eval("min(x1, x2, 0)", x), -0.7);
  EXPECT_DOUBLE_EQ(eval("max(x1, x2)", x), 0.3);
  EXPECT_DOUBLE_EQ(eval("abs(x2)", x), 0.7);
  EXPECT_DOUBLE_EQ(eval("sin(pi/2)"), 1.0);
  EXPECT_NEAR(eval("cos(pi)"), -1.0, 1e-15);
  EXPECT_DOUBLE_EQ(eval("exp(0)"), 1.0);
  EXPECT_DOUBLE_EQ(eval("sqrt(16)"), 4.0);
  EXPECT_DOUBLE_EQ(eval("step(0)"), 1.0);
  EXPECT_DOUBLE_EQ(eval("step(-1e-300)"), 0.0);
}

TEST(Expression, PiecewiseTargets) {
  const auto ring = Expression::parse("2*step(x1^2+x2^2-1/9)*step(1/4-x1^2-x2^2)-1");
  EXPECT_DOUBLE_EQ(ring({0.4, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(ring({0.5, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(ring({0.0, 0.0}), -1.0);
  EXPECT_DOUBLE_EQ(ring({0.6, 0.0}), -1.0);
}

TEST(Expression, ConstantDetection) {
  EXPECT_TRUE(Expression::parse("2000").is_constant());
  EXPECT_TRUE(Expression::parse("sin(pi) + 3").is_constant());
  EXPECT_FALSE(Expression::parse("x1 * 0").is_constant());
  EXPECT_TRUE(Expression::constant(3.5).is_constant());
  EXPECT_DOUBLE_EQ(Expression::constant(3.5)({1, 1}), 3.5);
  EXPECT_EQ(Expression::parse(" x2 ").source(), " x2 ");
}

TEST(Expression, ErrorsReportColumn) {
  auto column_of = [](const char* src) {
    try {
      (void)Expression::parse(src);
    } catch (const ExpressionError& e) {
      return static_cast<long>(e.position()) + 1;
    }
    return -1L;
  };
  EXPECT_EQ(column_of("1 + * 2"), 5);
  EXPECT_EQ(column_of("x3"), 1);
  EXPECT_GT(column_of("(1 + 2"), 0);
  EXPECT_GT(column_of("min(1)"), 0);
  EXPECT_GT(column_of("foo(1)"), 0);
  EXPECT_GT(column_of(""), 0);
  EXPECT_GT(column_of("1 2"), 0);
  try {
    (void)Expression::parse("1 + * 2");
  } catch (const ExpressionError& e) {
    EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);
  }
}
