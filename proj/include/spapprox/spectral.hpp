#pragma once

#include <spapprox/core.hpp>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <utility>

namespace spapprox {

using Harmonic = std::int64_t;
using Amplitude = std::complex<double>;

/// A 2*pi-periodic function held by its finitely many nonzero Fourier coefficients.
///
/// Amplitudes with modulus at or below kComplexTolerance are never stored, so
/// `size()` counts the support.
class SpectralFunction {
public:
  using Map = std::map<Harmonic, Amplitude>;

  SpectralFunction() = default;

  SpectralFunction(std::initializer_list<std::pair<const Harmonic, Amplitude>> entries) {
    for (const auto& [k, c] : entries) {
      set(k, c);
    }
  }

  explicit SpectralFunction(const Map& entries) {
    for (const auto& [k, c] : entries) {
      set(k, c);
    }
  }

  /// Overwrites the coefficient at `k`; a (near) zero amplitude erases it.
  void set(Harmonic k, Amplitude c) {
    if (std::abs(c) <= kComplexTolerance) {
      coeffs_.erase(k);
    } else {
      coeffs_[k] = c;
    }
  }

  [[nodiscard]] Amplitude operator[](Harmonic k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? Amplitude{} : it->second;
  }

  [[nodiscard]] const Map& coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

  /// Largest |k| in the support, 0 for the empty spectrum.
  [[nodiscard]] Harmonic max_abs_harmonic() const noexcept {
    if (coeffs_.empty()) {
      return 0;
    }
    return std::max(std::abs(coeffs_.begin()->first), std::abs(coeffs_.rbegin()->first));
  }

  /// Sum of c_k e^{ikx}, evaluated term by term.
  [[nodiscard]] Amplitude evaluate(double x) const {
    Amplitude sum{};
    for (const auto& [k, c] : coeffs_) {
      sum += c * std::polar(1.0, static_cast<double>(k) * x);
    }
    return sum;
  }

  SpectralFunction& operator+=(const SpectralFunction& other) {
    for (const auto& [k, c] : other.coeffs_) {
      set(k, (*this)[k] + c);
    }
    return *this;
  }

  SpectralFunction& operator-=(const SpectralFunction& other) {
    for (const auto& [k, c] : other.coeffs_) {
      set(k, (*this)[k] - c);
    }
    return *this;
  }

  SpectralFunction& operator*=(Amplitude scale) {
    Map scaled;
    for (const auto& [k, c] : coeffs_) {
      scaled.emplace(k, c * scale);
    }
    *this = SpectralFunction(scaled);
    return *this;
  }

  friend SpectralFunction operator+(SpectralFunction a, const SpectralFunction& b) { return a += b; }
  friend SpectralFunction operator-(SpectralFunction a, const SpectralFunction& b) { return a -= b; }
  friend SpectralFunction operator*(SpectralFunction a, Amplitude s) { return a *= s; }
  friend SpectralFunction operator*(Amplitude s, SpectralFunction a) { return a *= s; }

  /// Entrywise agreement within kComplexTolerance over the union of supports.
  friend bool operator==(const SpectralFunction& a, const SpectralFunction& b) {
    for (const auto& [k, c] : a.coeffs_) {
      if (std::abs(c - b[k]) > kComplexTolerance) {
        return false;
      }
    }
    for (const auto& [k, c] : b.coeffs_) {
      if (std::abs(c - a[k]) > kComplexTolerance) {
        return false;
      }
    }
    return true;
  }

private:
  Map coeffs_;
};

namespace detail {

template <class Pred>
double lp_sum(const SpectralFunction& f, double p, Pred keep) {
  double sum = 0.0;
  for (const auto& [k, c] : f.coefficients()) {
    if (keep(k)) {
      sum += std::pow(std::abs(c), p);
    }
  }
  return sum;
}

} // namespace detail

/// (sum_k |f(k)|^p)^(1/p).
[[nodiscard]] inline double sp_norm(const SpectralFunction& f, Exponent p) {
  const double sum = detail::lp_sum(f, p.value(), [](Harmonic) { return true; });
  return std::pow(sum, p.inverse());
}

/// Keeps the harmonics with |k| <= n - 1.
[[nodiscard]] inline SpectralFunction partial_sum(const SpectralFunction& f, std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("partial_sum: order n must be positive");
  }
  SpectralFunction out;
  for (const auto& [k, c] : f.coefficients()) {
    if (std::abs(k) <= n - 1) {
      out.set(k, c);
    }
  }
  return out;
}

/// Best approximation by trigonometric polynomials of order n - 1: the l^p norm of
/// the coefficients with |k| >= n.
[[nodiscard]] inline double best_approximation(const SpectralFunction& f, Exponent p, std::int64_t n) {
  if (n < 1) {
    throw InvalidArgument("best_approximation: order n must be positive");
  }
  const double sum = detail::lp_sum(f, p.value(), [n](Harmonic k) { return std::abs(k) >= n; });
  return std::pow(sum, p.inverse());
}

/// Trapezoid-rule Fourier coefficients for |k| <= band from samples at x_j = 2*pi*j/N.
[[nodiscard]] inline SpectralFunction fourier_from_samples(std::span<const Amplitude> values,
                                                           std::int64_t band) {
  if (band < 0) {
    throw InvalidArgument("fourier_from_samples: band must be nonnegative");
  }
  const auto n = static_cast<std::int64_t>(values.size());
  if (n < 2 * band + 1) {
    throw GridTooSmall("fourier_from_samples: " + std::to_string(n) + " samples cannot resolve band " +
                       std::to_string(band) + " (need at least " + std::to_string(2 * band + 1) + ")");
  }
  SpectralFunction out;
  for (std::int64_t k = -band; k <= band; ++k) {
    Amplitude sum{};
    for (std::int64_t j = 0; j < n; ++j) {
      // reduce k*j mod N so the twiddle angle stays in [0, 2*pi)
      const std::int64_t r = ((k * j) % n + n) % n;
      sum += values[static_cast<std::size_t>(j)] *
             std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));
    }
    out.set(k, sum / static_cast<double>(n));
  }
  return out;
}

} // namespace spapprox
