#pragma once

#include <spapprox/core.hpp>
#include <spapprox/quadrature.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spapprox {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// A nondecreasing weight mu on [0, tau], held as a density plus point masses.
class WeightMeasure {
public:
  using Density = std::function<double(double)>;

  WeightMeasure(double tau, Density density, std::vector<Atom> atoms, std::string label,
                std::optional<double> density_mass = std::nullopt)
      : tau_(tau), density_(std::move(density)), atoms_(std::move(atoms)), label_(std::move(label)) {
    if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
      throw InvalidArgument("measure: tau must be positive and finite");
    }
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.location < b.location; });
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& a = atoms_[i];
      if (!(a.location >= 0.0 && a.location <= tau_)) {
        throw InvalidArgument("measure: atom location outside [0, tau]");
      }
      if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
        throw InvalidArgument("measure: atom masses must be positive");
      }
      if (i > 0 && a.location == atoms_[i - 1].location) {
        throw InvalidArgument("measure: atom locations must be distinct");
      }
    }
    double mass = 0.0;
    if (density_) {
      mass = density_mass ? *density_mass
                          : adaptive_simpson(density_, 0.0, tau_, QuadratureOptions{.min_panels = 64}).value;
    }
    for (const auto& a : atoms_) {
      mass += a.mass;
    }
    if (!(mass > 0.0)) {
      throw InvalidArgument("measure: total mass must be positive (mu must be non-constant)");
    }
    total_mass_ = mass;
  }

  /// mu_1(t) = 1 - cos t, density sin t; nondecreasing only up to pi.
  static WeightMeasure mu1(double tau = kPi) {
    if (tau > kPi * (1.0 + 1e-15)) {
      throw InvalidArgument("mu1 is nondecreasing only on [0, pi]");
    }
    return {tau, [](double t) { return std::sin(t); }, {}, "mu1", 1.0 - std::cos(tau)};
  }

  /// mu_2(t) = t, unit density.
  static WeightMeasure mu2(double tau) {
    return {tau, [](double) { return 1.0; }, {}, "mu2", tau};
  }

  static WeightMeasure atoms_only(double tau, std::vector<Atom> atoms) {
    return {tau, nullptr, std::move(atoms), "atoms"};
  }

  /// Piecewise-linear density through (t_i, d_i); zero outside the table.
  static WeightMeasure tabulated_density(double tau, std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) {
      throw InvalidArgument("tabulated density needs at least two points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i].second < 0.0 || !std::isfinite(points[i].second)) {
        throw InvalidArgument("tabulated density must be finite and nonnegative");
      }
      if (i > 0 && !(points[i].first > points[i - 1].first)) {
        throw InvalidArgument("tabulated density abscissae must be strictly increasing");
      }
    }
    auto density = [pts = std::move(points)](double t) {
      if (t < pts.front().first || t > pts.back().first) {
        return 0.0;
      }
      const auto it = std::upper_bound(pts.begin(), pts.end(), t,
                                       [](double x, const auto& pt) { return x < pt.first; });
      if (it == pts.end()) {
        return pts.back().second;
      }
      const auto& lo = *(it - 1);
      const double w = (t - lo.first) / (it->first - lo.first);
      return lo.second + w * (it->second - lo.second);
    };
    return {tau, std::move(density), {}, "density"};
  }

  [[nodiscard]] double tau() const noexcept { return tau_; }
  [[nodiscard]] const Density& density() const noexcept { return density_; }
  [[nodiscard]] bool has_density() const noexcept { return static_cast<bool>(density_); }
  [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  /// mu(tau) - mu(0).
  [[nodiscard]] double total_mass() const noexcept { return total_mass_; }

private:
  double tau_;
  Density density_;
  std::vector<Atom> atoms_;
  std::string label_;
  double total_mass_ = 0.0;
};

/// int_0^u g(t) d mu(tau t / u): the density part by adaptive Simpson with the
/// Jacobian tau/u, plus sum_i m_i g(u t_i / tau) over the atoms.
template <class G>
double stieltjes_integral(G&& g, const WeightMeasure& mu, double u, const QuadratureOptions& opts = {}) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw InvalidArgument("stieltjes_integral: u must be positive and finite");
  }
  const double tau = mu.tau();
  double total = 0.0;
  if (mu.has_density()) {
    const auto& density = mu.density();
    const double jacobian = tau / u;
    auto integrand = [&](double t) { return g(t) * density(jacobian * t) * jacobian; };
    total += adaptive_simpson(integrand, 0.0, u, opts).value;
  }
  for (const auto& atom : mu.atoms()) {
    const double x = u * atom.location / tau;
    const double gx = g(x);
    if (!std::isfinite(gx)) {
      throw NonFiniteValue("integrand is not finite at atom t = " + std::to_string(x));
    }
    total += atom.mass * gx;
  }
  return total;
}

} // namespace spapprox
