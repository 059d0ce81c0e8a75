#pragma once

#include <spapprox/jackson.hpp>
#include <spapprox/random.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spapprox {

/// Slack allowed on the class constraints Omega <= 1 and Omega <= Omega(u).
inline constexpr double kMembershipSlack = 1e-9;
/// Slack allowed between sampled E_n values and the closed-form width.
inline constexpr double kCertificateTolerance = 1e-6;

/// A continuous increasing majorant Omega with Omega(0) = 0.
struct Majorant {
  std::function<double(double)> eval;
  std::size_t probe_points = 256;
  double probe_extent = 2.0 * kPi;
  std::string label;

  [[nodiscard]] double operator()(double u) const { return eval(u); }

  /// Checks Omega(0) = 0 and strict increase on probe_points equispaced points of [0, probe_extent].
  void validate() const {
    if (!eval) {
      throw InvalidArgument("majorant: no evaluation map");
    }
    if (probe_points < 2 || !(probe_extent > 0.0)) {
      throw InvalidArgument("majorant: probe grid needs at least two points and a positive extent");
    }
    if (std::abs(eval(0.0)) > kComplexTolerance) {
      throw InvalidArgument("majorant: Omega(0) must be 0");
    }
    double prev = 0.0;
    for (std::size_t i = 1; i < probe_points; ++i) {
      const double u = probe_extent * static_cast<double>(i) / static_cast<double>(probe_points - 1);
      const double v = eval(u);
      if (!std::isfinite(v) || !(v > prev)) {
        throw InvalidArgument("majorant: not strictly increasing at u = " + std::to_string(u));
      }
      prev = v;
    }
  }
};

/// Omega(u) = scale * u^beta.
[[nodiscard]] inline Majorant power_majorant(double beta, double scale = 1.0) {
  if (!(beta > 0.0) || !(scale > 0.0)) {
    throw InvalidArgument("power_majorant: beta and scale must be positive");
  }
  Majorant m;
  m.eval = [beta, scale](double u) { return scale * std::pow(u, beta); };
  m.label = "power:" + std::to_string(beta);
  return m;
}

struct FixedOrder {
  std::int64_t n = 1;
};

struct MajorantBound {
  Majorant omega;
};

/// The class of f with Omega_phi(f^psi, tau, mu, tau/n) <= 1 (fixed order) or
/// Omega_phi(f^psi, tau, mu, u) <= Omega(u) for all u > 0 (majorant).
struct SmoothnessClass {
  PsiSequence psi;
  ShapeFunction phi;
  Exponent p;
  WeightMeasure mu;
  std::variant<FixedOrder, MajorantBound> mode;

  [[nodiscard]] bool majorant_mode() const noexcept { return std::holds_alternative<MajorantBound>(mode); }

  void validate() const {
    if (const auto* fixed = std::get_if<FixedOrder>(&mode)) {
      if (fixed->n < 1) {
        throw InvalidArgument("smoothness class: n must be positive");
      }
    } else {
      std::get<MajorantBound>(mode).omega.validate();
    }
  }
};

/// Number of u-points probed in majorant mode: u_i = tau i / 64.
inline constexpr std::size_t kMembershipGridPoints = 64;

struct MembershipReport {
  bool member = true;
  /// max over the probed u of Omega_phi(f^psi, u) - bound(u).
  double worst_margin = -std::numeric_limits<double>::infinity();
  double worst_u = 0.0;
};

[[nodiscard]] inline MembershipReport membership_report(const SpectralFunction& f, const SmoothnessClass& cls,
                                                        const ModulusGrid& grid = {}) {
  cls.validate();
  const SpectralFunction derivative = psi_derivative(f, cls.psi);
  const double tau = cls.mu.tau();
  MembershipReport r;
  auto record = [&](double u, double value, double bound) {
    const double margin = value - bound;
    if (margin > r.worst_margin) {
      r.worst_margin = margin;
      r.worst_u = u;
    }
  };
  if (const auto* fixed = std::get_if<FixedOrder>(&cls.mode)) {
    const double u = tau / static_cast<double>(fixed->n);
    record(u, averaged_modulus(derivative, cls.p, cls.phi, cls.mu, u, grid), 1.0);
  } else {
    const auto& omega = std::get<MajorantBound>(cls.mode).omega;
    const ModulusProfile profile(derivative, cls.p, cls.phi, tau, grid);
    for (std::size_t i = 1; i <= kMembershipGridPoints; ++i) {
      const double u = tau * static_cast<double>(i) / static_cast<double>(kMembershipGridPoints);
      record(u, averaged_modulus(profile, cls.mu, u), omega(u));
    }
  }
  r.member = r.worst_margin <= kMembershipSlack;
  return r;
}

[[nodiscard]] inline bool membership(const SpectralFunction& f, const SmoothnessClass& cls,
                                     const ModulusGrid& grid = {}) {
  return membership_report(f, cls, grid).member;
}

namespace detail {

inline std::int64_t width_order(const SmoothnessClass& cls, std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("widths: n must be positive");
  }
  if (const auto* fixed = std::get_if<FixedOrder>(&cls.mode); fixed && fixed->n != n) {
    throw InvalidArgument("widths: n differs from the order the class was defined with");
  }
  return n;
}

inline void require_width_hypotheses(const SmoothnessClass& cls) {
  cls.validate();
  if (!cls.psi.psi_class) {
    throw NotCertified("widths: psi is not declared to be in the Psi class");
  }
  if (!cls.phi.cap_point || *cls.phi.cap_point < cls.mu.tau() * (1.0 - 1e-12)) {
    throw NotCertified("widths: phi is not declared nondecreasing on [0, tau]");
  }
  if (cls.majorant_mode()) {
    const double at_cap = cls.phi(*cls.phi.cap_point);
    if (relative_difference(at_cap, cls.phi.sup_value) > 1e-12) {
      throw NotCertified("widths: majorant mode needs phi(a) = sup phi");
    }
  }
}

/// Omega(tau / n) in majorant mode, 1 otherwise.
inline double majorant_factor(const SmoothnessClass& cls, std::int64_t n) {
  if (const auto* m = std::get_if<MajorantBound>(&cls.mode)) {
    return m->omega(cls.mu.tau() / static_cast<double>(n));
  }
  return 1.0;
}

} // namespace detail

/// A width value: exact when the equivalence condition holds, otherwise the
/// two-sided interval [lower, upper].
struct WidthValue {
  bool certified = false;
  std::optional<double> value;
  double lower = 0.0;
  double upper = 0.0;
  std::int64_t n = 0;
  /// The width dimensions the value applies to: 2n - 1 and 2n.
  std::array<std::int64_t, 2> dimensions{};
  EquivalenceReport equivalence;
};

[[nodiscard]] inline WidthValue width_closed_form(const SmoothnessClass& cls, std::int64_t n, const InfReport& inf) {
  detail::width_order(cls, n);
  detail::require_width_hypotheses(cls);
  if (inf.n != n) {
    throw InvalidArgument("width_closed_form: infimum report was computed for a different n");
  }
  const double scale = std::abs(cls.psi(n)) * detail::majorant_factor(cls, n);
  const double mass = cls.mu.total_mass();
  WidthValue w;
  w.n = n;
  w.dimensions = {2 * n - 1, 2 * n};
  w.equivalence = equiv_condition_check(inf);
  w.lower = std::pow(mass / inf.value_at_n, cls.p.inverse()) * scale;
  w.upper = std::pow(mass / inf.value, cls.p.inverse()) * scale;
  w.certified = w.equivalence.holds;
  if (w.certified) {
    w.value = w.lower;
  }
  return w;
}

[[nodiscard]] inline WidthValue width_closed_form(const SmoothnessClass& cls, std::int64_t n,
                                                  std::optional<std::int64_t> k_max = {}) {
  detail::width_order(cls, n);
  return width_closed_form(cls, n, inf_quantity(n, cls.phi, cls.p, cls.mu, k_max));
}

/// Radius of the ball of order-n polynomials embedded in the class:
/// ((mu(tau) - mu(0)) / int phi^p d mu)^(1/p) |psi(n)|, times Omega(tau/n) in majorant mode.
[[nodiscard]] inline double bernstein_radius(const SmoothnessClass& cls, std::int64_t n) {
  detail::width_order(cls, n);
  detail::require_width_hypotheses(cls);
  const double integral = shape_integral(cls.phi, cls.p, cls.mu);
  return std::pow(cls.mu.total_mass() / integral, cls.p.inverse()) * std::abs(cls.psi(n)) *
         detail::majorant_factor(cls, n);
}

struct WidthEvidence {
  std::size_t samples = 0;
  std::size_t failures = 0;
  /// Lower side: largest membership margin seen. Upper side: largest E_n seen.
  double max_observed = -std::numeric_limits<double>::infinity();
  /// Upper side only: E_n of the rescaled extremal polynomial, which should sit on the closed form.
  std::optional<double> extremal;
};

/// Samples random order-n polynomials on the sphere of radius radius_scale * R_n
/// and counts the ones that fall outside the class.
[[nodiscard]] inline WidthEvidence lower_certificate(const SmoothnessClass& cls, std::int64_t n, std::size_t samples,
                                                     std::uint64_t seed, const ModulusGrid& grid = {},
                                                     double radius_scale = 1.0) {
  const double radius = bernstein_radius(cls, n) * radius_scale;
  GaussianSource rng(seed);
  WidthEvidence e;
  for (std::size_t s = 0; s < samples; ++s) {
    SpectralFunction f = random_polynomial(rng, n);
    const double norm = sp_norm(f, cls.p);
    if (!(norm > 0.0)) {
      continue;
    }
    f *= Amplitude{radius / norm, 0.0};
    const auto report = membership_report(f, cls, grid);
    ++e.samples;
    e.max_observed = std::max(e.max_observed, report.worst_margin);
    if (!report.member) {
      ++e.failures;
    }
  }
  return e;
}

namespace detail {

/// Largest c with c f in the class (averaged moduli are 1-homogeneous in f);
/// infinity when f^psi has vanishing averaged modulus.
inline double membership_scale(const SpectralFunction& f, const SmoothnessClass& cls, const ModulusGrid& grid) {
  const SpectralFunction derivative = psi_derivative(f, cls.psi);
  const double tau = cls.mu.tau();
  double scale = std::numeric_limits<double>::infinity();
  if (const auto* fixed = std::get_if<FixedOrder>(&cls.mode)) {
    const double omega = averaged_modulus(derivative, cls.p, cls.phi, cls.mu, tau / static_cast<double>(fixed->n), grid);
    if (omega > 0.0) {
      scale = 1.0 / omega;
    }
    return scale;
  }
  const auto& majorant = std::get<MajorantBound>(cls.mode).omega;
  const ModulusProfile profile(derivative, cls.p, cls.phi, tau, grid);
  for (std::size_t i = 1; i <= kMembershipGridPoints; ++i) {
    const double u = tau * static_cast<double>(i) / static_cast<double>(kMembershipGridPoints);
    const double omega = averaged_modulus(profile, cls.mu, u);
    if (omega > 0.0) {
      scale = std::min(scale, majorant(u) / omega);
    }
  }
  return scale;
}

} // namespace detail

/// Rescales random spectra supported on |k| <= 8n onto the class boundary and
/// records the largest E_n. A sample fails when E_n exceeds the closed form by
/// more than kCertificateTolerance. The rescaled extremal polynomial is reported
/// separately and does not count as a sample.
[[nodiscard]] inline WidthEvidence upper_certificate(const SmoothnessClass& cls, std::int64_t n, std::size_t samples,
                                                     std::uint64_t seed, const WidthValue& width,
                                                     const ModulusGrid& grid = {}) {
  detail::width_order(cls, n);
  if (!width.certified) {
    throw NotCertified("upper_certificate: the width is only known up to an interval");
  }
  const double target = *width.value;
  GaussianSource rng(seed);
  WidthEvidence e;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto terms = static_cast<std::size_t>(1 + rng.next_u64() % 8);
    SpectralFunction f = random_sparse_spectrum(rng, 8 * n, terms);
    const double scale = detail::membership_scale(f, cls, grid);
    ++e.samples;
    // no finite scale: f^psi is constant and E_n(f) = 0 for every multiple
    const double en = std::isfinite(scale) ? scale * best_approximation(f, cls.p, n) : 0.0;
    e.max_observed = std::max(e.max_observed, en);
    if (en > target + kCertificateTolerance) {
      ++e.failures;
    }
  }
  const SpectralFunction fn = extremal_function(n, cls.psi, Amplitude{1.0, 0.0});
  e.extremal = detail::membership_scale(fn, cls, grid) * best_approximation(fn, cls.p, n);
  return e;
}

struct WidthCertificate {
  WidthValue width;
  WidthEvidence lower;
  WidthEvidence upper;
  bool consistent = false;
};

[[nodiscard]] inline WidthCertificate certify_width(const SmoothnessClass& cls, std::int64_t n, std::size_t samples,
                                                    std::uint64_t seed, const InfReport& inf,
                                                    const ModulusGrid& grid = {}) {
  WidthCertificate c;
  c.width = width_closed_form(cls, n, inf);
  c.lower = lower_certificate(cls, n, samples, seed, grid);
  c.upper = upper_certificate(cls, n, samples, seed, c.width, grid);
  c.consistent = c.lower.failures == 0 && c.upper.failures == 0;
  return c;
}

/// Default xi grid: 41 log-spaced points over [1e-2, 1e2], ten per decade, xi = 1 included.
[[nodiscard]] inline std::vector<double> default_xi_grid() {
  std::vector<double> xi;
  for (int i = -20; i <= 20; ++i) {
    xi.push_back(std::pow(10.0, static_cast<double>(i) / 10.0));
  }
  return xi;
}

/// Default u grid: a i / 64 for i = 1..64.
[[nodiscard]] inline std::vector<double> default_u_grid(double a) {
  std::vector<double> u;
  for (std::size_t i = 1; i <= kMembershipGridPoints; ++i) {
    u.push_back(a * static_cast<double>(i) / static_cast<double>(kMembershipGridPoints));
  }
  return u;
}

struct MajorantCheckReport {
  bool passes = true;
  /// max over the grid of (lhs - rhs) / rhs.
  double worst_margin = -std::numeric_limits<double>::infinity();
  double worst_xi = 0.0;
  double worst_u = 0.0;
  std::size_t pairs = 0;
};

/// Checks Omega(u / xi) (int_0^{xi tau} phi_*^p(t) d mu(t / xi))^(1/p) <= Omega(u) (int_0^tau phi^p d mu)^(1/p)
/// on every (xi, u) pair, phi_* being phi held constant beyond its cap point.
[[nodiscard]] inline MajorantCheckReport majorant_condition_check(const Majorant& omega, const ShapeFunction& phi,
                                                                  Exponent p, const WeightMeasure& mu,
                                                                  std::vector<double> xi_grid = {},
                                                                  std::vector<double> u_grid = {}) {
  omega.validate();
  if (!phi.cap_point) {
    throw InvalidArgument("majorant_condition_check: phi has no declared cap point");
  }
  const double a = *phi.cap_point;
  if (xi_grid.empty()) {
    xi_grid = default_xi_grid();
  }
  if (u_grid.empty()) {
    u_grid = default_u_grid(a);
  }
  for (const double u : u_grid) {
    if (!(u > 0.0) || u > a * (1.0 + 1e-12)) {
      throw InvalidArgument("majorant_condition_check: u grid must lie in (0, a]");
    }
  }
  const ShapeFunction capped = truncate_at_cap(phi);
  const double pv = p.value();
  const double reference = std::pow(shape_integral(phi, p, mu), p.inverse());
  MajorantCheckReport r;
  for (const double xi : xi_grid) {
    if (!(xi > 0.0)) {
      throw InvalidArgument("majorant_condition_check: xi must be positive");
    }
    const double length = xi * mu.tau();
    QuadratureOptions opts;
    opts.min_panels = panels_for(1.0, length);
    const double stretched = std::pow(
        stieltjes_integral([&](double t) { return capped.pow(t, pv); }, mu, length, opts), p.inverse());
    for (const double u : u_grid) {
      const double lhs = omega(u / xi) * stretched;
      const double rhs = omega(u) * reference;
      const double margin = (lhs - rhs) / rhs;
      ++r.pairs;
      if (margin > r.worst_margin) {
        r.worst_margin = margin;
        r.worst_xi = xi;
        r.worst_u = u;
      }
    }
  }
  r.passes = r.worst_margin <= kMembershipSlack;
  return r;
}

} // namespace spapprox
