#pragma once

#include <spapprox/averaging.hpp>
#include <spapprox/psi.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spapprox {

/// Relative tolerance under which two values of the k-sweep count as tied.
inline constexpr double kTieTolerance = 1e-9;
/// Relative tolerance of the equivalence condition I = int phi^p d mu.
inline constexpr double kEquivalenceTolerance = 1e-7;

/// int_0^tau phi(k t / n)^p d mu(t).
[[nodiscard]] inline double jackson_integral(std::int64_t k, std::int64_t n, const ShapeFunction& phi, Exponent p,
                                             const WeightMeasure& mu, QuadratureOptions opts = {}) {
  const double theta = static_cast<double>(k) / static_cast<double>(n);
  opts.min_panels = std::max(opts.min_panels, panels_for(theta, mu.tau()));
  const double pv = p.value();
  return stieltjes_integral([&](double t) { return phi.pow(theta * t, pv); }, mu, mu.tau(), opts);
}

/// int_0^tau phi(t)^p d mu(t).
[[nodiscard]] inline double shape_integral(const ShapeFunction& phi, Exponent p, const WeightMeasure& mu,
                                           const QuadratureOptions& opts = {}) {
  return jackson_integral(1, 1, phi, p, mu, opts);
}

[[nodiscard]] inline std::int64_t default_k_max(std::int64_t n) { return 64 * n + 1024; }

/// Result of the integer sweep defining I_{n,phi,p}(tau, mu).
struct InfReport {
  double value = 0.0;
  /// Smallest k whose integral ties the minimum.
  std::int64_t argmin_k = 0;
  std::int64_t n = 0;
  std::int64_t k_max = 0;
  bool attained_at_n = false;
  /// The minimiser sits on the last k of the window, so nothing is claimed about
  /// the infimum over all k >= n.
  bool window_edge = false;
  /// Integral at k = n, which is int_0^tau phi^p d mu.
  double value_at_n = 0.0;
  /// Integral for each k in [n, k_max]. Entries far above the minimum carry only
  /// the screening tolerance; see SweepOptions.
  std::vector<double> values;
};

struct SweepOptions {
  QuadratureOptions quadrature{};
  /// Every k is first integrated to this tolerance ...
  double screen_tol = 1e-6;
  /// ... and recomputed at quadrature.abs_tol when it lands within this relative
  /// margin (plus 100 screening tolerances) of the running minimum.
  double refine_margin = 1e-4;
};

/// min over n <= k <= k_max of int_0^tau phi(k t / n)^p d mu(t).
[[nodiscard]] inline InfReport inf_quantity(std::int64_t n, const ShapeFunction& phi, Exponent p,
                                            const WeightMeasure& mu, std::optional<std::int64_t> k_max = {},
                                            const SweepOptions& opts = {}) {
  if (n < 1) {
    throw InvalidArgument("inf_quantity: n must be positive");
  }
  const std::int64_t kmax = k_max.value_or(default_k_max(n));
  if (kmax < n) {
    throw InvalidArgument("inf_quantity: k_max must be at least n");
  }
  QuadratureOptions screen = opts.quadrature;
  screen.abs_tol = std::max(opts.screen_tol, opts.quadrature.abs_tol);

  InfReport r;
  r.n = n;
  r.k_max = kmax;
  r.values.reserve(static_cast<std::size_t>(kmax - n + 1));
  double running = jackson_integral(n, n, phi, p, mu, opts.quadrature);
  r.values.push_back(running);
  for (std::int64_t k = n + 1; k <= kmax; ++k) {
    double v = jackson_integral(k, n, phi, p, mu, screen);
    if (v <= running * (1.0 + opts.refine_margin) + 100.0 * screen.abs_tol) {
      v = jackson_integral(k, n, phi, p, mu, opts.quadrature);
      running = std::min(running, v);
    }
    r.values.push_back(v);
  }
  r.value = running;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (relative_difference(r.values[i], r.value) <= kTieTolerance) {
      r.argmin_k = n + static_cast<std::int64_t>(i);
      break;
    }
  }
  r.value_at_n = r.values.front();
  r.attained_at_n = r.argmin_k == n;
  r.window_edge = r.argmin_k == kmax && kmax > n;
  return r;
}

/// 2^(lambda+1) / (lambda+1), the infimum over theta >= 1 of
/// int_0^pi (1 - cos theta t)^lambda sin t dt for natural lambda.
[[nodiscard]] inline double closed_form_inf(double lambda) {
  if (!(lambda >= 1.0) || lambda != std::floor(lambda) || !std::isfinite(lambda)) {
    throw InvalidArgument("closed_form_inf: lambda must be a natural number");
  }
  return std::pow(2.0, lambda + 1.0) / (lambda + 1.0);
}

struct EquivalenceReport {
  bool holds = false;
  double inf_value = 0.0;
  double reference = 0.0;
  double rel_diff = 0.0;
};

[[nodiscard]] inline EquivalenceReport equiv_condition_check(const InfReport& inf) {
  EquivalenceReport e;
  e.inf_value = inf.value;
  e.reference = inf.value_at_n;
  e.rel_diff = relative_difference(inf.value, inf.value_at_n);
  e.holds = e.rel_diff <= kEquivalenceTolerance && !inf.window_edge;
  return e;
}

/// Whether I_{n,phi,p}(tau, mu) equals int_0^tau phi^p d mu within 1e-7 relative.
[[nodiscard]] inline EquivalenceReport equiv_condition_check(std::int64_t n, const ShapeFunction& phi, Exponent p,
                                                             const WeightMeasure& mu,
                                                             std::optional<std::int64_t> k_max = {}) {
  return equiv_condition_check(inf_quantity(n, phi, p, mu, k_max));
}

struct JacksonBound {
  double lhs = 0.0;   ///< E_n(f)
  double bound = 0.0; ///< constant * nu(n) * Omega_phi(f^psi, tau, mu, tau/n)
  bool holds = false;
  /// The same bound with the averaged modulus replaced by omega_phi(f^psi, tau/n).
  double modulus_bound = 0.0;
  bool modulus_holds = false;
  double constant = 0.0; ///< ((mu(tau) - mu(0)) / I)^(1/p)
  double nu = 0.0;
  double averaged = 0.0;
  double modulus = 0.0;
};

inline constexpr double kBoundSlack = 1e-9;

[[nodiscard]] inline JacksonBound jackson_bound(const SpectralFunction& f, const PsiSequence& psi,
                                                const ShapeFunction& phi, Exponent p, const WeightMeasure& mu,
                                                std::int64_t n, const InfReport& inf, const ModulusGrid& grid = {}) {
  if (inf.n != n) {
    throw InvalidArgument("jackson_bound: infimum report was computed for a different n");
  }
  const SpectralFunction derivative = psi_derivative(f, psi);
  JacksonBound b;
  b.lhs = best_approximation(f, p, n);
  b.nu = nu(psi, n).value;
  b.constant = std::pow(mu.total_mass() / inf.value, p.inverse());
  const double u = mu.tau() / static_cast<double>(n);
  const ModulusProfile profile(derivative, p, phi, u, grid);
  b.averaged = averaged_modulus(profile, mu, u);
  b.modulus = profile.at(u);
  b.bound = b.constant * b.nu * b.averaged;
  b.modulus_bound = b.constant * b.nu * b.modulus;
  b.holds = b.lhs <= b.bound + kBoundSlack;
  b.modulus_holds = b.lhs <= b.modulus_bound + kBoundSlack;
  return b;
}

[[nodiscard]] inline JacksonBound jackson_bound(const SpectralFunction& f, const PsiSequence& psi,
                                                const ShapeFunction& phi, Exponent p, const WeightMeasure& mu,
                                                std::int64_t n, std::optional<std::int64_t> k_max = {},
                                                const ModulusGrid& grid = {}) {
  return jackson_bound(f, psi, phi, p, mu, n, inf_quantity(n, phi, p, mu, k_max), grid);
}

/// Throws NotCertified unless the exactness hypotheses hold: the equivalence
/// condition, phi nondecreasing on [0, tau], and nu(n) attained at +-n.
inline void require_sharpness_hypotheses(const ShapeFunction& phi, const WeightMeasure& mu, const PsiSequence& psi,
                                         std::int64_t n, const InfReport& inf) {
  const auto equiv = equiv_condition_check(inf);
  if (!equiv.holds) {
    throw NotCertified("sharpness not certified: I_n differs from int phi^p d mu (rel " +
                       std::to_string(equiv.rel_diff) + ")");
  }
  if (!phi.cap_point || *phi.cap_point < mu.tau() * (1.0 - 1e-12)) {
    throw NotCertified("sharpness not certified: phi is not declared nondecreasing on [0, tau]");
  }
  const double at_n = std::max(std::abs(psi(n)), std::abs(psi(-n)));
  const double sup = nu(psi, n).value;
  if (relative_difference(sup, at_n) > kComplexTolerance) {
    throw NotCertified("sharpness not certified: nu(n) is not attained at +-n");
  }
}

/// ((mu(tau) - mu(0)) / int_0^tau phi^p d mu)^(1/p) * nu(n), the exact constant.
[[nodiscard]] inline double sharp_constant(const ShapeFunction& phi, Exponent p, const WeightMeasure& mu,
                                           const PsiSequence& psi, std::int64_t n, const InfReport& inf) {
  require_sharpness_hypotheses(phi, mu, psi, n, inf);
  return std::pow(mu.total_mass() / inf.value_at_n, p.inverse()) * nu(psi, n).value;
}

[[nodiscard]] inline double sharp_constant(const ShapeFunction& phi, Exponent p, const WeightMeasure& mu,
                                           const PsiSequence& psi, std::int64_t n,
                                           std::optional<std::int64_t> k_max = {}) {
  return sharp_constant(phi, p, mu, psi, n, inf_quantity(n, phi, p, mu, k_max));
}

/// gamma + eps_{-n} delta e^{-inx} + eps_n delta e^{inx}, eps_k = 1 iff |psi(k)| = nu(n).
[[nodiscard]] inline SpectralFunction extremal_function(std::int64_t n, const PsiSequence& psi, Amplitude delta,
                                                        Amplitude gamma = {}) {
  const double sup = nu(psi, n).value;
  if (!std::isfinite(sup)) {
    throw InvalidArgument("extremal_function: nu(n) is not finite");
  }
  auto attains = [&](std::int64_t k) { return std::abs(std::abs(psi(k)) - sup) <= kComplexTolerance * std::max(1.0, sup); };
  const bool minus = attains(-n);
  const bool plus = attains(n);
  if (!minus && !plus) {
    throw ExtremalNotAttained("the extremal construction needs |psi(n)| or |psi(-n)| to equal nu(n)");
  }
  SpectralFunction f;
  f.set(0, gamma);
  if (minus) {
    f.set(-n, delta);
  }
  if (plus) {
    f.set(n, delta);
  }
  return f;
}

struct SharpnessCertificate {
  double ratio = 0.0;
  double constant = 0.0;
  double rel_gap = 0.0;
};

/// Runs the extremal function through the full pipeline: ratio = E_n(f_n) / Omega_phi(f_n^psi, tau, mu, tau/n).
[[nodiscard]] inline SharpnessCertificate sharpness_certificate(const ShapeFunction& phi, Exponent p,
                                                                const WeightMeasure& mu, const PsiSequence& psi,
                                                                std::int64_t n, const InfReport& inf,
                                                                const ModulusGrid& grid = {}) {
  SharpnessCertificate c;
  c.constant = sharp_constant(phi, p, mu, psi, n, inf);
  const SpectralFunction fn = extremal_function(n, psi, Amplitude{1.0, 0.0});
  const double u = mu.tau() / static_cast<double>(n);
  const double omega = averaged_modulus(psi_derivative(fn, psi), p, phi, mu, u, grid);
  c.ratio = best_approximation(fn, p, n) / omega;
  c.rel_gap = std::abs(c.ratio - c.constant) / c.constant;
  return c;
}

[[nodiscard]] inline SharpnessCertificate sharpness_certificate(const ShapeFunction& phi, Exponent p,
                                                                const WeightMeasure& mu, const PsiSequence& psi,
                                                                std::int64_t n, const ModulusGrid& grid = {},
                                                                std::optional<std::int64_t> k_max = {}) {
  return sharpness_certificate(phi, p, mu, psi, n, inf_quantity(n, phi, p, mu, k_max), grid);
}

} // namespace spapprox
