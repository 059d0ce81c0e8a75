#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spapprox {

/// Absolute tolerance for complex equality and zero-pruning of coefficients.
inline constexpr double kComplexTolerance = 1e-12;

inline constexpr double kPi = std::numbers::pi;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class GridTooSmall : public Error {
public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
public:
  using Error::Error;
};

class NonFiniteValue : public Error {
public:
  using Error::Error;
};

class ZeroMultiplier : public Error {
public:
  using Error::Error;
};

class MultiplierOverflow : public Error {
public:
  using Error::Error;
};

/// A sharpness or width claim was requested outside the hypotheses that make it exact.
class NotCertified : public Error {
public:
  using Error::Error;
};

class ExtremalNotAttained : public Error {
public:
  using Error::Error;
};

/// The exponent p of the coefficient space, 1 <= p < infinity.
class Exponent {
public:
  explicit Exponent(double p) : p_(p) {
    if (!std::isfinite(p) || p < 1.0) {
      throw InvalidArgument("exponent must be finite and >= 1, got " + std::to_string(p));
    }
  }

  [[nodiscard]] double value() const noexcept { return p_; }
  [[nodiscard]] double inverse() const noexcept { return 1.0 / p_; }

  friend bool operator==(const Exponent&, const Exponent&) = default;

private:
  double p_;
};

[[nodiscard]] inline double relative_difference(double a, double b) noexcept {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace spapprox
