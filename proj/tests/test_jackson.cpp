#include <spapprox/jackson.hpp>
#include <spapprox/random.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace spapprox;

namespace {

const double kTau34 = 3 * kPi / 4;

ShapeFunction constant_one() { return tabulated_shape({{0.0, 1.0}, {kPi, 1.0}}, kPi, 1.0, "one"); }

/// int_0^tau 2 (1 - cos(theta t)) dt = 2 (tau - sin(theta tau) / theta).
double lebesgue_phi1_squared(double theta, double tau) { return 2.0 * (tau - std::sin(theta * tau) / theta); }

} // namespace

TEST(InfQuantity, Mu1PhiOneSquared) {
  for (const std::int64_t n : {1, 2, 3}) {
    const auto r = inf_quantity(n, phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), 64 * n);
    EXPECT_NEAR(r.value, 4.0, 1e-9);
    EXPECT_EQ(r.argmin_k, n);
    EXPECT_TRUE(r.attained_at_n);
    EXPECT_FALSE(r.window_edge);
    EXPECT_LE(r.value, r.value_at_n);
  }
}

TEST(InfQuantity, Mu2ThreeQuarterPi) {
  const double expected = 2.0 * (kTau34 - std::sqrt(2.0) / 2.0);
  EXPECT_NEAR(expected, 3.2981754, 1e-6);
  for (const std::int64_t n : {1, 2, 5}) {
    const auto r = inf_quantity(n, phi_alpha(1), Exponent(2), WeightMeasure::mu2(kTau34), 64 * n);
    EXPECT_NEAR(r.value, expected, 1e-9);
    EXPECT_EQ(r.argmin_k, n);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const double theta = static_cast<double>(n + static_cast<std::int64_t>(i)) / static_cast<double>(n);
      EXPECT_NEAR(r.values[i], lebesgue_phi1_squared(theta, kTau34), 1e-5);
    }
  }
}

TEST(InfQuantity, ConstantShapeTiesBreakToN) {
  const auto mu = WeightMeasure::mu1(kPi);
  const auto r = inf_quantity(3, constant_one(), Exponent(2), mu, 40);
  EXPECT_NEAR(r.value, mu.total_mass(), 1e-10);
  EXPECT_EQ(r.argmin_k, 3);
  for (const double v : r.values) {
    EXPECT_NEAR(v, mu.total_mass(), 1e-6);
  }
}

TEST(InfQuantity, DefaultWindowAndValidation) {
  const auto r = inf_quantity(1, phi_alpha(1), Exponent(2), WeightMeasure::mu2(kPi / 2));
  EXPECT_EQ(r.k_max, default_k_max(1));
  EXPECT_EQ(r.values.size(), static_cast<std::size_t>(default_k_max(1)));
  EXPECT_EQ(r.argmin_k, 1);
  EXPECT_THROW((void)inf_quantity(0, phi_alpha(1), Exponent(2), WeightMeasure::mu2(1.0), 5), InvalidArgument);
  EXPECT_THROW((void)inf_quantity(4, phi_alpha(1), Exponent(2), WeightMeasure::mu2(1.0), 3), InvalidArgument);
}

TEST(InfQuantity, WindowEdgeIsFlagged) {
  // on [0, 2 pi] the k = 5 integral at n = 4 undercuts k = 4; a window ending there is an edge
  const auto r = inf_quantity(4, phi_alpha(1), Exponent(2), WeightMeasure::mu2(2 * kPi), 5);
  EXPECT_EQ(r.argmin_k, 5);
  EXPECT_TRUE(r.window_edge);
  EXPECT_FALSE(equiv_condition_check(r).holds);
}

TEST(InfQuantity, NonincreasingInWindowAndStableUnderDoubling) {
  for (const double ap : {1.0, 2.0, 3.0}) {
    const auto phi = phi_alpha(ap / 2.0);
    double previous = std::numeric_limits<double>::infinity();
    for (const std::int64_t k_max : {2, 8, 32, 128}) {
      const auto r = inf_quantity(2, phi, Exponent(2), WeightMeasure::mu2(kPi / 2), k_max);
      EXPECT_LE(r.value, previous);
      previous = r.value;
      EXPECT_EQ(r.argmin_k, 2);
    }
  }
}

TEST(ClosedFormInf, ValuesAndRejection) {
  EXPECT_DOUBLE_EQ(closed_form_inf(1), 2.0);
  EXPECT_DOUBLE_EQ(closed_form_inf(2), 8.0 / 3.0);
  EXPECT_DOUBLE_EQ(closed_form_inf(3), 4.0);
  EXPECT_THROW((void)closed_form_inf(1.5), InvalidArgument);
  EXPECT_THROW((void)closed_form_inf(0), InvalidArgument);
}

TEST(EquivalenceCondition, CertifiedAndUncertifiedCases) {
  EXPECT_TRUE(equiv_condition_check(1, phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), 64).holds);
  EXPECT_TRUE(equiv_condition_check(1, phi_alpha(1), Exponent(2), WeightMeasure::mu2(kTau34), 64).holds);
  // on [0, 2 pi]: min over k of 2 (2 pi - sin(2 pi k / n) n / k) sits below k = n when n = 4
  const std::int64_t n = 4;
  double brute = std::numeric_limits<double>::infinity();
  for (std::int64_t k = n; k <= 64 * n; ++k) {
    brute = std::min(brute, lebesgue_phi1_squared(static_cast<double>(k) / n, 2 * kPi));
  }
  const auto report = equiv_condition_check(n, phi_alpha(1), Exponent(2), WeightMeasure::mu2(2 * kPi), 64 * n);
  EXPECT_NEAR(report.inf_value, brute, 1e-9);
  EXPECT_NEAR(report.reference, 4 * kPi, 1e-9);
  EXPECT_FALSE(report.holds);
}

TEST(JacksonBound, LowOrderFunctionHoldsTrivially) {
  const SpectralFunction f{{0, 1.0}, {1, 2.0}, {-2, 1.0}};
  const auto b = jackson_bound(f, power_psi(1), phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), 3, 3);
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_TRUE(b.holds);
  EXPECT_TRUE(b.modulus_holds);
}

TEST(JacksonBound, ExtremalFunctionReachesTheSharpConstant) {
  for (const std::int64_t n : {1, 2, 4}) {
    const auto f = extremal_function(n, power_psi(1), 1.0);
    const auto b = jackson_bound(f, power_psi(1), phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), n, 64 * n);
    EXPECT_NEAR(b.lhs / b.averaged, std::sqrt(2.0) / 2.0 / static_cast<double>(n), 1e-9);
    EXPECT_NEAR(b.bound, b.lhs, 1e-9);
    EXPECT_TRUE(b.holds);
  }
}

TEST(JacksonBound, RandomSpectraRespectBothForms) {
  GaussianSource rng(123);
  const auto mu = WeightMeasure::mu2(kTau34);
  const auto phi = phi_alpha(2);
  const auto psi = power_psi(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_u64() % 5);
    const auto f = random_sparse_spectrum(rng, 4 * n, 1 + rng.next_u64() % 8);
    const auto b = jackson_bound(f, psi, phi, Exponent(1), mu, n, std::max(n, f.max_abs_harmonic()));
    EXPECT_TRUE(b.holds) << "trial " << trial << ": " << b.lhs << " > " << b.bound;
    EXPECT_TRUE(b.modulus_holds);
    EXPECT_GE(b.modulus_bound + 1e-9, b.bound);
  }
}

TEST(JacksonBound, MismatchedInfimumRejected) {
  const auto inf = inf_quantity(2, phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), 8);
  EXPECT_THROW((void)jackson_bound({{3, 1.0}}, power_psi(0), phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), 3,
                                   inf),
               InvalidArgument);
}

TEST(SharpConstant, Mu1ClosedForms) {
  const auto mu = WeightMeasure::mu1(kPi);
  for (const double p : {1.0, 2.0}) {
    for (const double lambda : {1.0, 2.0}) {
      const double alpha = 2.0 * lambda / p;
      for (const std::int64_t n : {1, 3}) {
        const double expected = std::pow(lambda + 1.0, 1.0 / p) / std::pow(2.0, alpha) / static_cast<double>(n);
        EXPECT_NEAR(sharp_constant(phi_alpha(alpha), Exponent(p), mu, power_psi(1), n, 64 * n), expected,
                    1e-9 * expected);
      }
    }
  }
  for (const double r : {0.0, 1.0, 2.0}) {
    EXPECT_NEAR(sharp_constant(phi_alpha(1), Exponent(2), mu, power_psi(r), 2, 128),
                std::sqrt(2.0) / 2.0 * std::pow(2.0, -r), 1e-10);
  }
}

TEST(SharpConstant, Mu2AgainstAntiderivative) {
  // (tau / (4 int_0^tau sin^2(t/2) dt))^{1/2} with int_0^tau sin^2(t/2) dt = (tau - sin tau) / 2
  const double oracle = std::sqrt(kTau34 / (4.0 * (kTau34 - std::sin(kTau34)) / 2.0));
  EXPECT_NEAR(sharp_constant(phi_alpha(1), Exponent(2), WeightMeasure::mu2(kTau34), power_psi(0), 1, 64), oracle,
              1e-10);
  EXPECT_NEAR(oracle, 0.8452179, 1e-7);
}

TEST(SharpConstant, HypothesisFailuresAreNotCertified) {
  EXPECT_THROW((void)sharp_constant(phi_alpha(1), Exponent(2), WeightMeasure::mu2(2 * kPi), power_psi(0), 4, 256),
               NotCertified);
  const auto short_cap = tabulated_shape({{0.0, 0.0}, {1.0, 1.0}}, 1.0, 1.0);
  EXPECT_THROW((void)sharp_constant(short_cap, Exponent(2), WeightMeasure::mu2(kTau34), power_psi(0), 1, 16),
               NotCertified);
  PsiSequence bumped;
  bumped.eval = [](Harmonic k) { return Amplitude{std::abs(k) == 3 ? 1.0 : 0.5, 0.0}; };
  bumped.horizon = 100;
  EXPECT_THROW((void)sharp_constant(phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), bumped, 2, 128),
               NotCertified);
}

TEST(ExtremalFunction, Construction) {
  for (const double p : {1.0, 2.0, 3.0}) {
    const auto f = extremal_function(3, power_psi(2), 1.0);
    EXPECT_EQ(f, (SpectralFunction{{-3, 1.0}, {3, 1.0}}));
    EXPECT_NEAR(best_approximation(f, Exponent(p), 3), std::pow(2.0, 1.0 / p), 1e-15);
  }
  const auto lopsided = tabulated_psi({{2, 1.0}, {-2, 0.5}}, 1.0, false, "lopsided");
  EXPECT_EQ(extremal_function(2, lopsided, 1.0, 0.5), (SpectralFunction{{0, 0.5}, {2, 1.0}}));
  EXPECT_EQ(extremal_function(2, power_psi(1), 0.0, 3.0), (SpectralFunction{{0, 3.0}}));
  PsiSequence bumped;
  bumped.eval = [](Harmonic k) { return Amplitude{std::abs(k) == 3 ? 1.0 : 0.5, 0.0}; };
  bumped.horizon = 100;
  EXPECT_THROW((void)extremal_function(2, bumped, 1.0), ExtremalNotAttained);
}

TEST(SharpnessCertificate, Examples) {
  const auto a = sharpness_certificate(phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), power_psi(1), 4,
                                       ModulusGrid{}, 256);
  EXPECT_LE(a.rel_gap, 1e-6);
  EXPECT_NEAR(a.constant, std::sqrt(2.0) / 8.0, 1e-12);

  const auto b = sharpness_certificate(phi_alpha(2), Exponent(1), WeightMeasure::mu2(kTau34), power_psi(0), 2,
                                       ModulusGrid{}, 128);
  // (tau / (4 int_0^tau sin^2(t/2) dt)) with the same antiderivative
  EXPECT_NEAR(b.constant, kTau34 / (2.0 * (kTau34 - std::sin(kTau34))), 1e-10);
  EXPECT_LE(b.rel_gap, 1e-6);

  const auto c = sharpness_certificate(phi_alpha(1), Exponent(2), WeightMeasure::mu1(kPi), power_psi(0), 1,
                                       ModulusGrid{}, 64);
  EXPECT_NEAR(c.ratio, std::sqrt(2.0) / 2.0, 1e-9);
}
