#include "pprc/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pprc;

TEST(Quadrature, PolynomialsAreExactOnOnePanel) {
  const auto r = integrate([](double x) { return 7 * std::pow(x, 9) - x * x + 1; }, -1.0, 2.0);
  const double exact = 0.7 * (std::pow(2.0, 10) - 1) - (8.0 + 1.0) / 3.0 + 3.0;
  EXPECT_NEAR(r.value, exact, 1e-10);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, SmoothIntegrandConverges) {
  const auto r = integrate([](double x) { return std::exp(-x) * std::sin(5 * x); }, 0.0, 10.0);
  const double exact = (5.0 - std::exp(-10.0) * (std::sin(50.0) + 5 * std::cos(50.0))) / 26.0;
  EXPECT_NEAR(r.value, exact, 1e-12);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, DepthCapReportsNonConvergence) {
  QuadratureSpec q;
  q.max_depth = 1;
  q.order = 8;
  q.abs_tol = 1e-15;
  const auto r = integrate([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0, q);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.error_estimate, 0.0);
}

TEST(Quadrature, FixedRuleOrders) {
  for (int order : {8, 16, 32})
    EXPECT_NEAR(integrate_fixed([](double x) { return std::cos(x); }, 0.0, 1.0, 4, order),
                std::sin(1.0), 1e-14);
}
