#pragma once

#include <spapprox/measure.hpp>
#include <spapprox/modulus.hpp>

#include <cmath>

namespace spapprox {

/// Initial panel count for integrating a trigonometric expression whose highest
/// frequency is `frequency` over an interval of length `length`.
[[nodiscard]] inline std::size_t panels_for(double frequency, double length) {
  const double periods = frequency * length / (2.0 * kPi);
  return static_cast<std::size_t>(std::max(16.0, std::ceil(8.0 * periods)));
}

/// Omega_phi(f, tau, mu, u) from a profile covering [0, u].
[[nodiscard]] inline double averaged_modulus(const ModulusProfile& profile, const WeightMeasure& mu, double u,
                                             QuadratureOptions opts = {}) {
  if (!(u > 0.0)) {
    throw InvalidArgument("averaged_modulus: u must be positive");
  }
  opts.min_panels = std::max(opts.min_panels, panels_for(static_cast<double>(profile.max_harmonic()), u));
  // omega^p is nondecreasing, so dividing by its value at u bounds the integrand by 1
  // and turns the absolute quadrature tolerance into a relative one
  const double top = profile.power_at(u);
  if (!(top > 0.0)) {
    return 0.0;
  }
  const double integral =
      stieltjes_integral([&profile, top](double t) { return profile.power_at(t) / top; }, mu, u, opts);
  return std::pow(std::max(integral, 0.0) * top / mu.total_mass(), profile.exponent().inverse());
}

/// Omega_phi(f, tau, mu, u) = ((1 / (mu(tau) - mu(0))) int_0^u omega_phi(f, t)^p d mu(tau t / u))^(1/p).
[[nodiscard]] inline double averaged_modulus(const SpectralFunction& f, Exponent p, const ShapeFunction& phi,
                                             const WeightMeasure& mu, double u, const ModulusGrid& grid = {},
                                             const QuadratureOptions& opts = {}) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw InvalidArgument("averaged_modulus: u must be positive and finite");
  }
  const ModulusProfile profile(f, p, phi, u, grid);
  return averaged_modulus(profile, mu, u, opts);
}

} // namespace spapprox
