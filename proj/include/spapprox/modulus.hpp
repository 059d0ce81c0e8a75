#pragma once

#include <spapprox/core.hpp>
#include <spapprox/shape.hpp>
#include <spapprox/spectral.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

namespace spapprox {

/// Discretization of the supremum over shifts 0 <= h <= t.
struct ModulusGrid {
  std::size_t base_points = 4096;
  std::size_t refine_iters = 40;

  void validate() const {
    if (base_points < 64) {
      throw InvalidArgument("ModulusGrid: base_points must be at least 64");
    }
  }
};

/// Running supremum M(t) = sup_{0 <= h <= t} S(h) of a nonnegative objective on [0, t_max].
///
/// S is sampled once on a uniform grid of [0, t_max]; every interior grid peak is
/// refined by golden-section search over its two neighbouring cells. Queries at
/// any t then combine the grid prefix maximum, the refined peaks left of t and
/// S(t) itself, so sweeping t upwards never repeats the search. For t at or below
/// `fast_limit` the objective is known to be nondecreasing and S(t) is returned.
template <class Objective>
class RunningSup {
public:
  RunningSup(Objective objective, double t_max, const ModulusGrid& grid, double fast_limit = 0.0)
      : objective_(std::move(objective)), t_max_(t_max), fast_limit_(fast_limit), grid_(grid) {
    grid_.validate();
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
      throw InvalidArgument("running sup: t_max must be finite and nonnegative");
    }
    if (t_max_ > fast_limit_) {
      build();
    }
  }

  [[nodiscard]] double objective(double h) const { return objective_(h); }
  [[nodiscard]] double t_max() const noexcept { return t_max_; }

  [[nodiscard]] double sup_until(double t) const {
    if (t < 0.0) {
      throw InvalidArgument("running sup: t must be nonnegative");
    }
    if (t > t_max_ * (1.0 + 1e-12)) {
      throw InvalidArgument("running sup: t exceeds the profiled range");
    }
    t = std::min(t, t_max_);
    if (t <= fast_limit_) {
      return objective_(t);
    }
    auto j = static_cast<std::size_t>(t / step_);
    j = std::min(j, prefix_.size() - 1);
    while (j > 0 && static_cast<double>(j) * step_ > t) {
      --j;
    }
    double m = prefix_[j];
    const auto it = std::upper_bound(peak_h_.begin(), peak_h_.end(), t);
    if (it != peak_h_.begin()) {
      m = std::max(m, peak_prefix_[static_cast<std::size_t>(it - peak_h_.begin()) - 1]);
    }
    return std::max(m, objective_(t));
  }

private:
  void build() {
    const std::size_t n = grid_.base_points;
    step_ = t_max_ / static_cast<double>(n - 1);
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j) {
      values[j] = objective_(static_cast<double>(j) * step_);
    }
    prefix_.resize(n);
    prefix_[0] = values[0];
    for (std::size_t j = 1; j < n; ++j) {
      prefix_[j] = std::max(prefix_[j - 1], values[j]);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {
      const double v = values[j];
      const bool peak = v >= values[j - 1] && v >= values[j + 1] && (v > values[j - 1] || v > values[j + 1]);
      if (!peak) {
        continue;
      }
      const auto [h, s] = refine(static_cast<double>(j - 1) * step_, static_cast<double>(j + 1) * step_);
      peak_h_.push_back(h);
      peak_value_.push_back(std::max(s, v));
    }
    // peaks are discovered in increasing h; keep the prefix maximum for lookups
    peak_prefix_.resize(peak_value_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < peak_value_.size(); ++i) {
      running = std::max(running, peak_value_[i]);
      peak_prefix_[i] = running;
    }
  }

  std::pair<double, double> refine(double lo, double hi) const {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective_(x1);
    double f2 = objective_(x2);
    double best_h = f1 >= f2 ? x1 : x2;
    double best = std::max(f1, f2);
    for (std::size_t it = 0; it < grid_.refine_iters; ++it) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kInvPhi * (hi - lo);
        f1 = objective_(x1);
        if (f1 > best) {
          best = f1;
          best_h = x1;
        }
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kInvPhi * (hi - lo);
        f2 = objective_(x2);
        if (f2 > best) {
          best = f2;
          best_h = x2;
        }
      }
    }
    return {best_h, best};
  }

  Objective objective_;
  double t_max_;
  double fast_limit_;
  ModulusGrid grid_;
  double step_ = 0.0;
  std::vector<double> prefix_;
  std::vector<double> peak_h_;
  std::vector<double> peak_value_;
  std::vector<double> peak_prefix_;
};

/// omega_phi(f, t)^p as a function of t on [0, t_max], built once per (f, p, phi).
class ModulusProfile {
public:
  ModulusProfile(const SpectralFunction& f, Exponent p, const ShapeFunction& phi, double t_max,
                 const ModulusGrid& grid = {}, bool fast_path = true)
      : p_(p), max_harmonic_(f.max_abs_harmonic()),
        sup_(make_objective(f, p, phi), t_max, grid, fast_limit(f, phi, fast_path)) {}

  /// omega_phi(f, t)^p.
  [[nodiscard]] double power_at(double t) const { return sup_.sup_until(t); }
  /// omega_phi(f, t).
  [[nodiscard]] double at(double t) const { return std::pow(power_at(t), p_.inverse()); }
  [[nodiscard]] double t_max() const noexcept { return sup_.t_max(); }
  [[nodiscard]] Exponent exponent() const noexcept { return p_; }
  [[nodiscard]] Harmonic max_harmonic() const noexcept { return max_harmonic_; }

private:
  using Objective = std::function<double(double)>;

  static Objective make_objective(const SpectralFunction& f, Exponent p, const ShapeFunction& phi) {
    // phi is even, so +k and -k share one term
    std::map<Harmonic, double> merged;
    for (const auto& [k, c] : f.coefficients()) {
      merged[std::abs(k)] += std::pow(std::abs(c), p.value());
    }
    std::vector<std::pair<double, double>> terms;
    terms.reserve(merged.size());
    for (const auto& [k, w] : merged) {
      terms.emplace_back(static_cast<double>(k), w);
    }
    return [terms = std::move(terms), phi, pv = p.value()](double h) {
      double s = 0.0;
      for (const auto& [k, w] : terms) {
        s += w * phi.pow(k * h, pv);
      }
      return s;
    };
  }

  static double fast_limit(const SpectralFunction& f, const ShapeFunction& phi, bool enabled) {
    if (!enabled || !phi.cap_point) {
      return 0.0;
    }
    const Harmonic kmax = f.max_abs_harmonic();
    if (kmax == 0) {
      return std::numeric_limits<double>::infinity();
    }
    return *phi.cap_point / static_cast<double>(kmax);
  }

  Exponent p_;
  Harmonic max_harmonic_;
  RunningSup<Objective> sup_;
};

/// omega_phi(f, t) = sup_{|h| <= t} (sum_k phi(kh)^p |f(k)|^p)^(1/p).
///
/// When phi is declared nondecreasing on [0, a] and max|k| * t <= a the sup sits at
/// h = t and is returned directly; otherwise the grid search of RunningSup runs.
[[nodiscard]] inline double generalized_modulus(const SpectralFunction& f, Exponent p, const ShapeFunction& phi,
                                                double t, const ModulusGrid& grid = {}, bool fast_path = true) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("generalized_modulus: t must be finite and nonnegative");
  }
  return ModulusProfile(f, p, phi, t, grid, fast_path).at(t);
}

/// The order-alpha modulus computed from the Fourier multiplier of the difference
/// operator, |1 - e^{-ikh}|^alpha, with no use of the shape-function route.
[[nodiscard]] inline double difference_modulus_oracle(const SpectralFunction& f, Exponent p, double alpha, double t,
                                                      const ModulusGrid& grid = {}) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("difference_modulus_oracle: alpha must be positive");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidArgument("difference_modulus_oracle: t must be finite and nonnegative");
  }
  std::vector<std::pair<double, double>> terms;
  for (const auto& [k, c] : f.coefficients()) {
    terms.emplace_back(static_cast<double>(k), std::pow(std::abs(c), p.value()));
  }
  const double expo = alpha * p.value();
  auto objective = [terms = std::move(terms), expo](double h) {
    double s = 0.0;
    for (const auto& [k, w] : terms) {
      const std::complex<double> multiplier = 1.0 - std::polar(1.0, -k * h);
      s += w * std::pow(std::abs(multiplier), expo);
    }
    return s;
  };
  RunningSup<decltype(objective)> sup(std::move(objective), t, grid, 0.0);
  return std::pow(sup.sup_until(t), p.inverse());
}

} // namespace spapprox
