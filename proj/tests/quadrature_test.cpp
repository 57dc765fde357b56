#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rasec/golden_section.hpp"
#include "rasec/quadrature.hpp"

using namespace rasec;

TEST(Quadrature, FiniteIntervalPolynomialIsExact) {
  const auto r = integrate([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 2.0, {});
  EXPECT_NEAR(r.value, 3.75 - 3.0 + 3.0, 1e-13);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
  const auto a = integrate([](double x) { return std::sin(x); }, 0.0, 2.0, {});
  const auto b = integrate([](double x) { return std::sin(x); }, 2.0, 0.0, {});
  EXPECT_NEAR(a.value, 1.0 - std::cos(2.0), 1e-12);
  EXPECT_NEAR(b.value, -a.value, 1e-14);
}

TEST(Quadrature, EndpointSingularityConverges) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  spec.rel_tol = 1e-10;
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec);
  EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(Quadrature, BreakpointsResolveKink) {
  const double bp[] = {0.3};
  const auto r = integrate([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, {}, bp);
  EXPECT_NEAR(r.value, 0.5 * 0.09 + 0.5 * 0.49, 1e-14);
  EXPECT_EQ(r.subdivisions, 0);
}

TEST(Quadrature, ExhaustedBudgetThrows) {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-15;
  EXPECT_THROW(integrate([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, spec), NonConvergent);
}

TEST(SemiInfinite, ExponentialMoments) {
  for (TailStrategy tail : {TailStrategy::scan, TailStrategy::map}) {
    QuadratureSpec spec;
    spec.tail = tail;
    EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, spec).value, 1.0, 1e-10);
    EXPECT_NEAR(integrate_semi_infinite([](double x) { return x * std::exp(-x); }, spec).value, 1.0, 1e-10);
  }
}

TEST(SemiInfinite, ShiftedAndScaledGaussian) {
  const auto f = [](double x) { return std::exp(-0.5 * (x - 40.0) * (x - 40.0) / 9.0); };
  const auto r = integrate_semi_infinite(f, {}, 0.0, 10.0);
  EXPECT_NEAR(r.value, 3.0 * std::sqrt(2.0 * std::numbers::pi), 1e-8);
}

TEST(SemiInfinite, RejectsNonFiniteIntegrand) {
  EXPECT_THROW(integrate_semi_infinite([](double) { return std::nan(""); }, {}), Error);
}

TEST(Quadrature, SpecValidation) {
  QuadratureSpec spec;
  spec.abs_tol = -1.0;
  EXPECT_THROW(check(spec), ValidationError);
}

TEST(GoldenSection, InteriorMaximum) {
  const auto r = maximize_unimodal([](double x) { return -(x - 1.7) * (x - 1.7); }, 1.0, 3.0, 1e-8);
  EXPECT_NEAR(r.x, 1.7, 1e-7);
  EXPECT_LE(r.bracket_width, 1e-8);
}

TEST(GoldenSection, MonotoneObjectivesLandOnTheBoundary) {
  EXPECT_EQ(maximize_unimodal([](double x) { return x; }, 1.0, 3.0, 1e-6).x, 3.0);
  EXPECT_EQ(maximize_unimodal([](double x) { return -x; }, 1.0, 3.0, 1e-6).x, 1.0);
}

TEST(GoldenSection, DegenerateInterval) {
  const auto r = maximize_unimodal([](double x) { return x; }, 2.0, 2.0, 1e-6);
  EXPECT_EQ(r.x, 2.0);
  EXPECT_THROW(maximize_unimodal([](double x) { return x; }, 2.0, 1.0, 1e-6), std::invalid_argument);
}
