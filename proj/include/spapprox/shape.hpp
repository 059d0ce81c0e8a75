#pragma once

#include <spapprox/core.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace spapprox {

/// An even, bounded, nonnegative shape function phi with phi(0) = 0.
///
/// `cap_point` is the largest a for which phi is declared nondecreasing on [0, a].
/// Membership in the admissible class is only ever checked on probe grids; see
/// check_shape().
struct ShapeFunction {
  std::function<double(double)> eval;
  std::optional<double> cap_point;
  double sup_value = 0.0;
  std::string label;
  /// Optional fused evaluation of phi(t)^p; falls back to pow(eval(t), p).
  std::function<double(double, double)> eval_pow;

  [[nodiscard]] double operator()(double t) const { return eval(t); }

  [[nodiscard]] double pow(double t, double p) const {
    if (eval_pow) {
      return eval_pow(t, p);
    }
    return std::pow(eval(t), p);
  }
};

/// phi_alpha(t) = 2^(alpha/2) (1 - cos t)^(alpha/2) = (2 |sin(t/2)|)^alpha.
[[nodiscard]] inline ShapeFunction phi_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw InvalidArgument("phi_alpha: alpha must be positive");
  }
  ShapeFunction s;
  s.eval = [alpha](double t) { return std::pow(2.0 * std::abs(std::sin(0.5 * t)), alpha); };
  s.eval_pow = [alpha](double t, double p) {
    const double base = 2.0 * std::abs(std::sin(0.5 * t));
    const double e = alpha * p;
    if (e == std::floor(e) && e <= 8.0) {
      double r = 1.0;
      for (int i = 0; i < static_cast<int>(e); ++i) {
        r *= base;
      }
      return r;
    }
    return std::pow(base, e);
  };
  s.cap_point = kPi;
  s.sup_value = std::pow(2.0, alpha);
  s.label = "phi_alpha:" + std::to_string(alpha);
  return s;
}

/// Piecewise-linear shape through (t_i, v_i), t_0 = 0 < t_1 < ..., held at v_last
/// beyond the table and mirrored to negative t.
[[nodiscard]] inline ShapeFunction tabulated_shape(std::vector<std::pair<double, double>> points,
                                                   std::optional<double> cap_point, double sup_value,
                                                   std::string label = "table") {
  if (points.size() < 2) {
    throw InvalidArgument("tabulated shape needs at least two points");
  }
  if (points.front().first != 0.0) {
    throw InvalidArgument("tabulated shape must start at t = 0");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, v] = points[i];
    if (!std::isfinite(t) || !std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("tabulated shape values must be finite and nonnegative");
    }
    if (i > 0 && !(t > points[i - 1].first)) {
      throw InvalidArgument("tabulated shape abscissae must be strictly increasing");
    }
  }
  if (cap_point && !(*cap_point > 0.0)) {
    throw InvalidArgument("cap point must be positive");
  }
  ShapeFunction s;
  s.eval = [pts = std::move(points)](double t) {
    t = std::abs(t);
    if (t >= pts.back().first) {
      return pts.back().second;
    }
    const auto it = std::upper_bound(pts.begin(), pts.end(), t,
                                     [](double x, const auto& pt) { return x < pt.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
  };
  s.cap_point = cap_point;
  s.sup_value = sup_value;
  s.label = std::move(label);
  return s;
}

/// phi_*(t) = phi(min(|t|, a)) for the declared cap point a.
[[nodiscard]] inline ShapeFunction truncate_at_cap(const ShapeFunction& phi) {
  if (!phi.cap_point) {
    throw InvalidArgument("truncation needs a declared cap point");
  }
  const double a = *phi.cap_point;
  ShapeFunction s = phi;
  s.eval = [inner = phi.eval, a](double t) { return inner(std::min(std::abs(t), a)); };
  if (phi.eval_pow) {
    s.eval_pow = [inner = phi.eval_pow, a](double t, double p) { return inner(std::min(std::abs(t), a), p); };
  }
  s.label = phi.label + "*";
  return s;
}

struct ShapeProbeReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Probes the shape invariants: phi(0) = 0, evenness, 0 <= phi <= sup_value and
/// monotonicity on [0, cap_point]. The measure-zero condition on {phi = 0} is not
/// decidable from point values and is not checked.
[[nodiscard]] inline ShapeProbeReport check_shape(const ShapeFunction& phi, std::size_t probes = 2048,
                                                  double extent = 4.0 * kPi) {
  ShapeProbeReport report;
  auto fail = [&report](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };
  if (std::abs(phi(0.0)) > kComplexTolerance) {
    fail("phi(0) != 0");
  }
  const double slack = 1e-12 * std::max(1.0, phi.sup_value);
  for (std::size_t i = 1; i <= probes; ++i) {
    const double t = extent * static_cast<double>(i) / static_cast<double>(probes);
    const double v = phi(t);
    if (!std::isfinite(v) || v < 0.0) {
      fail("phi(" + std::to_string(t) + ") is negative or not finite");
      break;
    }
    if (std::abs(v - phi(-t)) > slack) {
      fail("phi is not even at t = " + std::to_string(t));
      break;
    }
    if (v > phi.sup_value + slack) {
      fail("phi exceeds its declared sup at t = " + std::to_string(t));
      break;
    }
  }
  if (phi.cap_point) {
    const double a = *phi.cap_point;
    double prev = phi(0.0);
    for (std::size_t i = 1; i <= probes; ++i) {
      const double t = a * static_cast<double>(i) / static_cast<double>(probes);
      const double v = phi(t);
      if (v < prev - slack) {
        fail("phi decreases on [0, cap] near t = " + std::to_string(t));
        break;
      }
      prev = v;
    }
  }
  return report;
}

} // namespace spapprox
