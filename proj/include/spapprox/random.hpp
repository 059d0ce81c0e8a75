#pragma once

#include <spapprox/spectral.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace spapprox {

/// Standard normal variates from mt19937_64 via Box-Muller, written out by hand so
/// the stream is identical across standard libraries for a given seed.
class GaussianSource {
public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // 53 random bits in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  Amplitude complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  std::uint64_t next_u64() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Trigonometric polynomial with complex Gaussian coefficients on |k| <= order.
[[nodiscard]] inline SpectralFunction random_polynomial(GaussianSource& rng, Harmonic order) {
  SpectralFunction f;
  for (Harmonic k = -order; k <= order; ++k) {
    f.set(k, rng.complex_normal());
  }
  return f;
}

/// Sparse spectrum: `terms` draws of a harmonic uniform in [-max_harmonic, max_harmonic]
/// with a complex Gaussian amplitude (repeated harmonics accumulate).
[[nodiscard]] inline SpectralFunction random_sparse_spectrum(GaussianSource& rng, Harmonic max_harmonic,
                                                             std::size_t terms) {
  SpectralFunction f;
  const auto span = static_cast<std::uint64_t>(2 * max_harmonic + 1);
  for (std::size_t i = 0; i < terms; ++i) {
    const auto k = static_cast<Harmonic>(rng.next_u64() % span) - max_harmonic;
    f.set(k, f[k] + rng.complex_normal());
  }
  return f;
}

} // namespace spapprox
