#pragma once

#include <spapprox/spectral.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

namespace spapprox {

enum class ZeroPolicy {
  annihilate, ///< harmonics where psi vanishes are dropped by the psi-derivative
  reject,     ///< ... or raise ZeroMultiplier
};

/// A multiplier sequence psi(k), |psi(k)| <= bound.
struct PsiSequence {
  std::function<Amplitude(Harmonic)> eval;
  double bound = 1.0;
  ZeroPolicy zero_policy = ZeroPolicy::annihilate;
  Harmonic horizon = 1'000'000;
  std::string label;
  /// Declared member of the class with |psi(k)| = |psi(-k)| >= |psi(k+1)|, k >= 1.
  bool psi_class = false;

  [[nodiscard]] Amplitude operator()(Harmonic k) const { return eval(k); }
};

/// psi(k) = (ik)^(-r) for k != 0. For r > 0, psi(0) = 0 and the zero-set policy
/// applies; for r = 0 the sequence is identically 1.
[[nodiscard]] inline PsiSequence power_psi(double r, ZeroPolicy policy = ZeroPolicy::annihilate) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InvalidArgument("power_psi: r must be finite and nonnegative");
  }
  PsiSequence psi;
  const bool integral = r == std::floor(r) && r < 64.0;
  psi.eval = [r, integral](Harmonic k) -> Amplitude {
    if (k == 0) {
      return r == 0.0 ? Amplitude{1.0, 0.0} : Amplitude{};
    }
    const double magnitude = std::pow(static_cast<double>(std::abs(k)), -r);
    const double sign = k > 0 ? 1.0 : -1.0;
    if (integral) {
      // i^(-r) cycles through 1, -i, -1, i; keep it exact
      static constexpr Amplitude kCycle[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
      const auto m = static_cast<int>(r) % 4;
      Amplitude unit = kCycle[m];
      if (sign < 0.0) {
        unit = std::conj(unit);
      }
      return magnitude * unit;
    }
    return std::polar(magnitude, -sign * 0.5 * kPi * r);
  };
  psi.bound = 1.0;
  psi.zero_policy = policy;
  psi.label = "power:" + std::to_string(r);
  psi.psi_class = true;
  return psi;
}

[[nodiscard]] inline PsiSequence const_psi(Amplitude c) {
  PsiSequence psi;
  psi.eval = [c](Harmonic) { return c; };
  psi.bound = std::max(std::abs(c), 1e-300);
  psi.label = "const";
  psi.psi_class = true;
  return psi;
}

/// Values from a table, zero off the table. Psi-class membership is taken from the
/// caller's declaration.
[[nodiscard]] inline PsiSequence tabulated_psi(std::map<Harmonic, Amplitude> table, double bound,
                                               bool declared_psi_class, std::string label = "table") {
  PsiSequence psi;
  psi.eval = [t = std::move(table)](Harmonic k) {
    const auto it = t.find(k);
    return it == t.end() ? Amplitude{} : it->second;
  };
  psi.bound = bound;
  psi.label = std::move(label);
  psi.psi_class = declared_psi_class;
  return psi;
}

/// J^psi(f): coefficients psi(k) f(k).
[[nodiscard]] inline SpectralFunction psi_integral(const SpectralFunction& f, const PsiSequence& psi) {
  SpectralFunction out;
  for (const auto& [k, c] : f.coefficients()) {
    out.set(k, psi(k) * c);
  }
  return out;
}

/// f^psi: coefficients f(k) / psi(k) on the support where psi(k) != 0.
[[nodiscard]] inline SpectralFunction psi_derivative(const SpectralFunction& f, const PsiSequence& psi) {
  SpectralFunction out;
  for (const auto& [k, c] : f.coefficients()) {
    const Amplitude m = psi(k);
    if (m == Amplitude{}) {
      if (psi.zero_policy == ZeroPolicy::reject) {
        throw ZeroMultiplier("psi(" + std::to_string(k) + ") = 0 but f has a nonzero coefficient there");
      }
      continue;
    }
    const Amplitude q = c / m;
    if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) {
      throw MultiplierOverflow("f(k) / psi(k) overflows at k = " + std::to_string(k));
    }
    out.set(k, q);
  }
  return out;
}

struct NuReport {
  double value = 0.0;
  /// True when the value rests on the declared Psi-class monotonicity rather than a scan.
  bool certified = false;
  /// The scan stopped at the horizon with no monotonicity to justify the tail.
  bool horizon_reached = false;
  Harmonic argmax = 0;
};

/// nu(n) = sup_{|k| >= n} |psi(k)|, short-circuited to max(|psi(n)|, |psi(-n)|) for
/// Psi-class sequences and otherwise scanned up to psi.horizon.
[[nodiscard]] inline NuReport nu(const PsiSequence& psi, Harmonic n) {
  if (n < 1) {
    throw InvalidArgument("nu: n must be positive");
  }
  NuReport r;
  if (psi.psi_class) {
    const double plus = std::abs(psi(n));
    const double minus = std::abs(psi(-n));
    r.value = std::max(plus, minus);
    r.argmax = plus >= minus ? n : -n;
    r.certified = true;
    return r;
  }
  for (Harmonic k = n; k <= std::max(n, psi.horizon); ++k) {
    for (const Harmonic s : {k, -k}) {
      const double m = std::abs(psi(s));
      if (m > r.value) {
        r.value = m;
        r.argmax = s;
      }
    }
  }
  r.horizon_reached = true;
  return r;
}

struct PsiClassReport {
  bool member = true;
  std::optional<Harmonic> first_violation;
  std::string reason;
};

/// Checks |psi(k)| <= bound, |psi(k)| = |psi(-k)| and |psi(k)| >= |psi(k+1)| for 1 <= k <= horizon.
[[nodiscard]] inline PsiClassReport is_in_Psi(const PsiSequence& psi, Harmonic horizon) {
  if (horizon < 2) {
    throw InvalidArgument("is_in_Psi: horizon must be at least 2");
  }
  auto violation = [](Harmonic k, std::string why) {
    return PsiClassReport{false, k, std::move(why)};
  };
  double prev = 0.0;
  for (Harmonic k = 1; k <= horizon; ++k) {
    const double plus = std::abs(psi(k));
    const double minus = std::abs(psi(-k));
    if (!std::isfinite(plus) || !std::isfinite(minus) || plus > psi.bound || minus > psi.bound) {
      return violation(k, "exceeds the declared bound");
    }
    if (std::abs(plus - minus) > kComplexTolerance * std::max(1.0, plus)) {
      return violation(k, "|psi(k)| != |psi(-k)|");
    }
    if (k > 1 && plus > prev * (1.0 + kComplexTolerance)) {
      return violation(k, "|psi(k)| increases");
    }
    prev = plus;
  }
  return {};
}

} // namespace spapprox
