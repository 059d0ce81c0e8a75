#pragma once

#include <spapprox/spapprox.hpp>

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spapprox::cli {

/// A malformed user-supplied spec string or data file.
class SpecError : public Error {
public:
  using Error::Error;
};

using nlohmann::json;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_number(std::string_view text, std::string_view what) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw SpecError(std::string(what) + ": expected a number, got '" + s + "'");
  }
  return v;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline std::vector<std::pair<double, double>> read_pairs(const json& j, const std::string& where) {
  if (!j.is_array()) {
    throw SpecError(where + ": 'points' must be an array of [x, y] pairs");
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& pt : j) {
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
      throw SpecError(where + ": every point must be a pair of numbers");
    }
    out.emplace_back(pt[0].get<double>(), pt[1].get<double>());
  }
  return out;
}

inline std::pair<std::string, std::string> split_kind(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    return {trim(spec), {}};
  }
  return {trim(spec.substr(0, colon)), trim(spec.substr(colon + 1))};
}

} // namespace detail

/// "pi", "3pi/4", "3*pi/4", "0.5*pi", "pi/2" or a plain number.
[[nodiscard]] inline double parse_tau(std::string_view text) {
  std::string s;
  for (const char c : text) {
    if (c != ' ' && c != '*') {
      s.push_back(c);
    }
  }
  const auto pos = s.find("pi");
  if (pos == std::string::npos) {
    return detail::parse_number(s, "tau");
  }
  const std::string coef = s.substr(0, pos);
  const std::string rest = s.substr(pos + 2);
  double value = kPi * (coef.empty() ? 1.0 : detail::parse_number(coef, "tau coefficient"));
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw SpecError("tau: cannot parse '" + std::string(text) + "'");
    }
    const double denom = detail::parse_number(rest.substr(1), "tau denominator");
    if (denom == 0.0) {
      throw SpecError("tau: division by zero");
    }
    value /= denom;
  }
  return value;
}

/// Spectrum file: [{"k": int, "re": number, "im": number}, ...]; "im" may be omitted.
[[nodiscard]] inline SpectralFunction spectrum_from_json(const json& j) {
  if (!j.is_array()) {
    throw SpecError("spectrum: expected an array of {k, re, im} objects");
  }
  SpectralFunction f;
  std::set<Harmonic> seen;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("k") || !entry["k"].is_number_integer() || !entry.contains("re")) {
      throw SpecError("spectrum: every entry needs an integer 'k' and a numeric 're'");
    }
    for (const auto& [key, _] : entry.items()) {
      if (key != "k" && key != "re" && key != "im") {
        throw SpecError("spectrum: unknown key '" + key + "'");
      }
    }
    const auto k = entry["k"].get<Harmonic>();
    if (!seen.insert(k).second) {
      throw SpecError("spectrum: duplicate harmonic k = " + std::to_string(k));
    }
    const double re = entry["re"].get<double>();
    const double im = entry.value("im", 0.0);
    f.set(k, {re, im});
  }
  return f;
}

[[nodiscard]] inline json spectrum_to_json(const SpectralFunction& f) {
  json out = json::array();
  for (const auto& [k, c] : f.coefficients()) {
    out.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

[[nodiscard]] inline SpectralFunction read_spectrum(const std::string& path) {
  return spectrum_from_json(detail::read_json_file(path));
}

/// "phi_alpha:<alpha>" or "table:<path>" (JSON {"points": [[t, v], ...], "cap_point": a, "sup_value": s}).
[[nodiscard]] inline ShapeFunction parse_shape(std::string_view spec) {
  const auto [kind, arg] = detail::split_kind(spec);
  if (kind == "phi_alpha") {
    return phi_alpha(detail::parse_number(arg, "phi_alpha"));
  }
  if (kind == "table") {
    const json j = detail::read_json_file(arg);
    if (!j.contains("points") || !j.contains("sup_value")) {
      throw SpecError(arg + ": shape table needs 'points' and 'sup_value'");
    }
    std::optional<double> cap;
    if (j.contains("cap_point") && !j["cap_point"].is_null()) {
      cap = j["cap_point"].get<double>();
    }
    return tabulated_shape(detail::read_pairs(j["points"], arg), cap, j["sup_value"].get<double>(), "table:" + arg);
  }
  throw SpecError("shape: unknown kind '" + kind + "' (expected phi_alpha:<a> or table:<path>)");
}

/// "power:<r>", "const:<c>" or "table:<path>"
/// (JSON {"values": [{"k", "re", "im"}], "bound": b, "psi_class": bool}).
[[nodiscard]] inline PsiSequence parse_psi(std::string_view spec) {
  const auto [kind, arg] = detail::split_kind(spec);
  if (kind == "power") {
    return power_psi(detail::parse_number(arg, "power"));
  }
  if (kind == "const") {
    return const_psi(detail::parse_number(arg, "const"));
  }
  if (kind == "table") {
    const json j = detail::read_json_file(arg);
    if (!j.contains("values") || !j.contains("bound")) {
      throw SpecError(arg + ": psi table needs 'values' and 'bound'");
    }
    const SpectralFunction values = spectrum_from_json(j["values"]);
    std::map<Harmonic, Amplitude> table(values.coefficients().begin(), values.coefficients().end());
    return tabulated_psi(std::move(table), j["bound"].get<double>(), j.value("psi_class", false), "table:" + arg);
  }
  throw SpecError("psi: unknown kind '" + kind + "' (expected power:<r>, const:<c> or table:<path>)");
}

/// "mu1", "mu2", "atoms:[t:m,...]" or "density:<path>" (JSON {"points": [[t, d], ...]}).
[[nodiscard]] inline WeightMeasure parse_measure(std::string_view spec, double tau) {
  const auto [kind, arg] = detail::split_kind(spec);
  if (kind == "mu1") {
    return WeightMeasure::mu1(tau);
  }
  if (kind == "mu2") {
    return WeightMeasure::mu2(tau);
  }
  if (kind == "atoms") {
    std::string body = arg;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
      throw SpecError("atoms: expected atoms:[t:m,...]");
    }
    body = body.substr(1, body.size() - 2);
    std::vector<Atom> atoms;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) {
        throw SpecError("atoms: entry '" + detail::trim(item) + "' is not t:m");
      }
      atoms.push_back({parse_tau(item.substr(0, colon)), detail::parse_number(item.substr(colon + 1), "atom mass")});
    }
    return WeightMeasure::atoms_only(tau, std::move(atoms));
  }
  if (kind == "density") {
    const json j = detail::read_json_file(arg);
    if (!j.contains("points")) {
      throw SpecError(arg + ": density table needs 'points'");
    }
    return WeightMeasure::tabulated_density(tau, detail::read_pairs(j["points"], arg));
  }
  throw SpecError("measure: unknown kind '" + kind + "' (expected mu1, mu2, atoms:[...] or density:<path>)");
}

/// "power:<beta>" or "power:<beta>:<scale>" for Omega(u) = scale * u^beta.
[[nodiscard]] inline Majorant parse_majorant(std::string_view spec) {
  const auto [kind, arg] = detail::split_kind(spec);
  if (kind != "power") {
    throw SpecError("majorant: unknown kind '" + kind + "' (expected power:<beta>[:<scale>])");
  }
  const auto colon = arg.find(':');
  if (colon == std::string::npos) {
    return power_majorant(detail::parse_number(arg, "majorant exponent"));
  }
  return power_majorant(detail::parse_number(arg.substr(0, colon), "majorant exponent"),
                        detail::parse_number(arg.substr(colon + 1), "majorant scale"));
}

} // namespace spapprox::cli
