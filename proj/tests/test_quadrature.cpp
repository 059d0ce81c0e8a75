#include <spapprox/measure.hpp>
#include <spapprox/quadrature.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace spapprox;

TEST(AdaptiveSimpson, PolynomialAndTrigonometricIntegrals) {
  EXPECT_NEAR(adaptive_simpson([](double t) { return t * t; }, 0.0, 3.0).value, 9.0, 1e-10);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::sin(t); }, 0.0, kPi).value, 2.0, 1e-10);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::exp(t); }, 0.0, 1.0).value, std::exp(1.0) - 1.0, 1e-10);
}

TEST(AdaptiveSimpson, ReversedBoundsFlipSign) {
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::cos(t); }, kPi / 2, 0.0).value, -1.0, 1e-10);
}

TEST(AdaptiveSimpson, KinkedIntegrandConverges) {
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::abs(t - 0.3); }, 0.0, 1.0).value, 0.29, 1e-10);
}

TEST(AdaptiveSimpson, BudgetExhaustionIsReported) {
  QuadratureOptions tight;
  tight.max_evaluations = 50;
  EXPECT_THROW((void)adaptive_simpson([](double t) { return std::sin(50.0 * t); }, 0.0, 10.0, tight),
               QuadratureBudgetExceeded);
}

TEST(AdaptiveSimpson, NonFiniteIntegrandAborts) {
  EXPECT_THROW((void)adaptive_simpson([](double t) { return 1.0 / (t - 0.5); }, 0.0, 1.0), NonFiniteValue);
}

TEST(StieltjesIntegral, SineAgainstLebesgue) {
  EXPECT_NEAR(stieltjes_integral([](double t) { return std::sin(t); }, WeightMeasure::mu2(kPi), kPi), 2.0, 1e-10);
}

TEST(StieltjesIntegral, AtomOnlyMeasure) {
  const auto mu = WeightMeasure::atoms_only(2.0, {{0.5, 3.0}});
  EXPECT_NEAR(stieltjes_integral([](double t) { return t * t; }, mu, 2.0), 3.0 * 0.25, 1e-15);
  // rescaled window: the atom moves to u t_0 / tau
  EXPECT_NEAR(stieltjes_integral([](double t) { return t; }, mu, 1.0), 3.0 * 0.25, 1e-15);
}

TEST(StieltjesIntegral, OneMinusCosineAgainstMu1) {
  EXPECT_NEAR(stieltjes_integral([](double t) { return 1.0 - std::cos(t); }, WeightMeasure::mu1(kPi), kPi), 2.0,
              1e-10);
}

TEST(StieltjesIntegral, RescaledWindowMatchesSubstitution) {
  // int_0^u g(t) d mu1(pi t / u) = int_0^pi g(u s / pi) sin s ds; with g(t) = t this is u
  for (const double u : {0.1, 1.0, 2.5}) {
    EXPECT_NEAR(stieltjes_integral([](double t) { return t; }, WeightMeasure::mu1(kPi), u), u, 1e-10);
  }
}

TEST(StieltjesIntegral, CosinePolynomialsMatchAntiderivatives) {
  // mu1: int_0^pi (1 - cos t)^m sin t dt = 2^{m+1} / (m + 1); mu2: int_0^tau (1 - cos t) dt = tau - sin tau
  for (int m = 0; m <= 4; ++m) {
    const double value =
        stieltjes_integral([m](double t) { return std::pow(1.0 - std::cos(t), m); }, WeightMeasure::mu1(kPi), kPi);
    EXPECT_NEAR(value, std::pow(2.0, m + 1) / (m + 1), 1e-9);
  }
  for (const double tau : {kPi / 2, 3 * kPi / 4, 2 * kPi}) {
    const double value =
        stieltjes_integral([](double t) { return 1.0 - std::cos(t); }, WeightMeasure::mu2(tau), tau);
    EXPECT_NEAR(value, tau - std::sin(tau), 1e-9);
  }
}

TEST(StieltjesIntegral, NonFiniteAtAtomAborts) {
  const auto mu = WeightMeasure::atoms_only(1.0, {{0.0, 1.0}});
  EXPECT_THROW((void)stieltjes_integral([](double t) { return 1.0 / t; }, mu, 1.0), NonFiniteValue);
}

TEST(WeightMeasure, ValidatesInvariants) {
  EXPECT_THROW(WeightMeasure::mu1(4.0), InvalidArgument);
  EXPECT_THROW(WeightMeasure::mu2(0.0), InvalidArgument);
  EXPECT_THROW(WeightMeasure::atoms_only(1.0, {{2.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(WeightMeasure::atoms_only(1.0, {{0.5, 1.0}, {0.5, 2.0}}), InvalidArgument);
  EXPECT_THROW(WeightMeasure::atoms_only(1.0, {{0.5, -1.0}}), InvalidArgument);
  EXPECT_THROW(WeightMeasure::atoms_only(1.0, {}), InvalidArgument);
  EXPECT_THROW(WeightMeasure::tabulated_density(1.0, {{0.0, 0.0}, {1.0, 0.0}}), InvalidArgument);
  EXPECT_NEAR(WeightMeasure::mu1(kPi).total_mass(), 2.0, 1e-15);
  EXPECT_NEAR(WeightMeasure::mu2(1.5).total_mass(), 1.5, 1e-15);
  EXPECT_NEAR(WeightMeasure::tabulated_density(1.0, {{0.0, 0.0}, {1.0, 2.0}}).total_mass(), 1.0, 1e-10);
}
