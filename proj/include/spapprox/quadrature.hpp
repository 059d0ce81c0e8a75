#pragma once

#include <spapprox/core.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <type_traits>

namespace spapprox {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_evaluations = 1'000'000;
  /// The interval is first cut into this many equal panels; oscillatory integrands
  /// need several panels per period so the first Simpson estimate is not aliased.
  std::size_t min_panels = 8;
  int max_depth = 48;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  /// Panels accepted only because max_depth was reached.
  std::size_t depth_limited_panels = 0;
};

namespace detail {

template <class F>
class SimpsonRunner {
public:
  SimpsonRunner(F& f, const QuadratureOptions& opts) : f_(f), opts_(opts) {}

  double eval(double x) {
    if (++result_.evaluations > opts_.max_evaluations) {
      throw QuadratureBudgetExceeded("adaptive Simpson exhausted its budget of " +
                                     std::to_string(opts_.max_evaluations) + " evaluations");
    }
    const double y = f_(x);
    if (!std::isfinite(y)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand is not finite at t = " << x;
      throw NonFiniteValue(msg.str());
    }
    return y;
  }

  void panel(double a, double fa, double m, double fm, double b, double fb, double whole, double eps,
             int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= opts_.max_depth || std::abs(delta) <= 15.0 * eps) {
      if (depth >= opts_.max_depth && std::abs(delta) > 15.0 * eps) {
        ++result_.depth_limited_panels;
      }
      result_.value += left + right + delta / 15.0;
      result_.error_estimate += std::abs(delta) / 15.0;
      return;
    }
    panel(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1);
    panel(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
  }

  QuadratureResult run(double a, double b) {
    if (b == a) {
      return result_;
    }
    const std::size_t panels = std::max<std::size_t>(1, opts_.min_panels);
    const double width = (b - a) / static_cast<double>(panels);
    const double eps = opts_.abs_tol / static_cast<double>(panels);
    double x0 = a;
    double f0 = eval(x0);
    for (std::size_t i = 0; i < panels; ++i) {
      const double x2 = (i + 1 == panels) ? b : a + width * static_cast<double>(i + 1);
      const double x1 = 0.5 * (x0 + x2);
      const double f1 = eval(x1);
      const double f2 = eval(x2);
      const double whole = (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);
      panel(x0, f0, x1, f1, x2, f2, whole, eps, 0);
      x0 = x2;
      f0 = f2;
    }
    return result_;
  }

private:
  F& f_;
  const QuadratureOptions& opts_;
  QuadratureResult result_;
};

} // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] with an absolute error target.
///
/// Throws QuadratureBudgetExceeded when the evaluation budget runs out and
/// NonFiniteValue when the integrand returns NaN or infinity.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, const QuadratureOptions& opts = {}) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("adaptive_simpson: integration bounds must be finite");
  }
  if (b < a) {
    auto r = adaptive_simpson(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  detail::SimpsonRunner<std::remove_reference_t<F>> runner(f, opts);
  return runner.run(a, b);
}

} // namespace spapprox
