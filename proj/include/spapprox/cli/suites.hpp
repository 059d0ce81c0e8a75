#pragma once

#include <spapprox/cli/config.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace spapprox::cli {

/// Where the expected value of a report row comes from.
inline constexpr const char* kClosedForm = "closed_form";
inline constexpr const char* kStatedConstant = "stated_constant";
inline constexpr const char* kOracle = "oracle";

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  /// CSV column order; every row carries these keys.
  std::vector<std::string> columns;
  std::vector<json> rows;

  [[nodiscard]] std::size_t failures() const {
    std::size_t count = 0;
    for (const auto& row : rows) {
      if (!row.at("pass").get<bool>()) {
        ++count;
      }
    }
    return count;
  }

  [[nodiscard]] bool passed() const { return failures() == 0; }
};

/// Settings that the command line may override.
struct RunSettings {
  std::optional<std::string> suite;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> output;
  std::optional<std::string> format;
  bool timestamp = true;
};

namespace detail {

inline std::vector<std::string> with_trailer(std::vector<std::string> columns) {
  columns.emplace_back("provenance");
  columns.emplace_back("pass");
  return columns;
}

inline json failure_row(json row, const std::string& error) {
  row["error"] = error;
  row["pass"] = false;
  return row;
}

inline Report run_closed_form_inf(ConfigSection& cfg, Report report) {
  const auto lambdas = cfg.list<int>("lambda", {1, 2, 3, 4, 5});
  const auto ns = cfg.list<std::int64_t>("n", {1});
  const auto factor = cfg.get<std::int64_t>("k_max_factor", 64);
  const auto tol = cfg.get<double>("tolerance", 1e-9);
  cfg.finish();
  report.columns = with_trailer({"lambda", "n", "k_max", "computed", "expected", "rel_err", "argmin_k"});
  const auto mu = WeightMeasure::mu1(kPi);
  for (const int lambda : lambdas) {
    for (const auto n : ns) {
      json row{{"lambda", lambda}, {"n", n}, {"k_max", factor * n}, {"provenance", kClosedForm}};
      try {
        // phi_{2 lambda} with p = 1 is 2^lambda (1 - cos t)^lambda
        const auto inf = inf_quantity(n, phi_alpha(2.0 * lambda), Exponent(1.0), mu, factor * n);
        const double computed = inf.value / std::pow(2.0, lambda);
        const double expected = closed_form_inf(lambda);
        const double rel = relative_difference(computed, expected);
        row.update({{"computed", computed}, {"expected", expected}, {"rel_err", rel},
                    {"argmin_k", inf.argmin_k}, {"pass", rel <= tol}});
      } catch (const Error& e) {
        row = failure_row(row, e.what());
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

/// The constant stated for each weight: on mu1 (alpha p / 2 + 1)^(1/p) / 2^alpha,
/// on mu2 (tau / (2^(alpha p) int_0^tau sin^(alpha p)(t/2) dt))^(1/p); both times n^(-r).
inline double stated_sharp_constant(const std::string& measure, double tau, double p, double alpha, double r,
                                    std::int64_t n) {
  const double decay = std::pow(static_cast<double>(n), -r);
  const double ap = alpha * p;
  if (measure == "mu1") {
    return std::pow(ap / 2.0 + 1.0, 1.0 / p) / std::pow(2.0, alpha) * decay;
  }
  QuadratureOptions opts;
  opts.min_panels = 64;
  const double integral =
      adaptive_simpson([ap](double t) { return std::pow(std::sin(0.5 * t), ap); }, 0.0, tau, opts).value;
  return std::pow(tau / (std::pow(2.0, ap) * integral), 1.0 / p) * decay;
}

inline WeightMeasure named_measure(const std::string& name, double tau) {
  if (name != "mu1" && name != "mu2") {
    throw InvalidArgument("measure must be mu1 or mu2, got '" + name + "'");
  }
  return parse_measure(name, tau);
}

inline Report run_sharpness(ConfigSection& cfg, Report report) {
  const auto measure = cfg.get<std::string>("measure", "mu1");
  const int measure_line = cfg.line("measure");
  if (measure != "mu1" && measure != "mu2") {
    throw ConfigError(measure_line, "measure must be mu1 or mu2");
  }
  const bool first = measure == "mu1";
  const auto taus = cfg.tau_list("tau", first ? std::vector<double>{kPi} : std::vector<double>{kPi / 2, 3 * kPi / 4});
  const auto ps = cfg.list<double>("p", {1.0, 2.0});
  const auto products = cfg.list<double>("alpha_p", first ? std::vector<double>{2.0, 4.0}
                                                          : std::vector<double>{1.0, 2.0, 3.0});
  const auto rs = cfg.list<double>("r", {0.0, 1.0, 2.0});
  const auto ns = cfg.list<std::int64_t>("n", {1, 2, 4, 8});
  const auto factor = cfg.get<std::int64_t>("k_max_factor", 64);
  const auto tol = cfg.get<double>("tolerance", 1e-6);
  const std::optional<double> override_value =
      cfg.has("constant_override") ? std::optional<double>(cfg.require<double>("constant_override")) : std::nullopt;
  cfg.finish();
  report.columns =
      with_trailer({"measure", "tau", "p", "alpha", "r", "n", "ratio", "constant", "expected", "rel_gap"});
  for (const double tau : taus) {
    const auto mu = named_measure(measure, tau);
    for (const double p : ps) {
      for (const double ap : products) {
        const double alpha = ap / p;
        const auto phi = phi_alpha(alpha);
        for (const auto n : ns) {
          std::optional<InfReport> inf;
          for (const double r : rs) {
            json row{{"measure", measure}, {"tau", tau}, {"p", p}, {"alpha", alpha}, {"r", r}, {"n", n},
                     {"provenance", kStatedConstant}};
            try {
              if (!inf) {
                inf = inf_quantity(n, phi, Exponent(p), mu, factor * n);
              }
              const auto cert = sharpness_certificate(phi, Exponent(p), mu, power_psi(r), n, *inf);
              const double expected = override_value.value_or(stated_sharp_constant(measure, tau, p, alpha, r, n));
              const double gap = std::abs(cert.ratio - expected) / expected;
              row.update({{"ratio", cert.ratio}, {"constant", cert.constant}, {"expected", expected},
                          {"rel_gap", gap}, {"pass", gap <= tol && cert.rel_gap <= tol}});
            } catch (const Error& e) {
              row = failure_row(row, e.what());
            }
            report.rows.push_back(row);
          }
        }
      }
    }
  }
  return report;
}

/// Inputs of one fuzz draw, shared by every (p, psi) combination.
struct FuzzDraw {
  SpectralFunction f;
  std::int64_t n = 1;
  double alpha = 1.0;
  std::string measure;
  double tau = kPi;
};

inline Report run_jackson_fuzz(ConfigSection& cfg, Report report) {
  const auto samples = cfg.get<std::size_t>("samples", 1000);
  const auto ps = cfg.list<double>("p", {1.0, 1.5, 2.0, 3.0});
  const auto rs = cfg.list<double>("r", {0.0, 1.0});
  const auto alphas = cfg.list<double>("alpha", {0.5, 1.0, 2.0});
  const auto measures = cfg.list<std::string>("measure", {"mu1", "mu2"});
  const auto taus = cfg.tau_list("tau", {kPi / 2, 3 * kPi / 4});
  const auto max_n = cfg.get<std::int64_t>("max_n", 6);
  const auto spread = cfg.get<std::int64_t>("harmonic_spread", 4);
  const auto max_terms = cfg.get<std::size_t>("max_terms", 8);
  if (samples > 0 && (alphas.empty() || measures.empty() || taus.empty())) {
    throw ConfigError(0, "jackson-fuzz: alpha, measure and tau lists must not be empty");
  }
  for (const auto& m : measures) {
    if (m != "mu1" && m != "mu2") {
      throw ConfigError(cfg.line("measure"), "measure entries must be mu1 or mu2");
    }
  }
  for (const auto& [key, value] : {std::pair<const char*, std::int64_t>{"max_n", max_n},
                                   {"harmonic_spread", spread},
                                   {"max_terms", static_cast<std::int64_t>(max_terms)}}) {
    if (value < 1) {
      throw ConfigError(cfg.line(key), std::string(key) + " must be positive");
    }
  }
  cfg.finish();
  report.columns = with_trailer({"p", "r", "samples", "violations", "modulus_violations", "worst_margin",
                                 "worst_modulus_margin"});
  if (ps.empty() || rs.empty()) {
    return report;
  }
  GaussianSource rng(report.seed);
  std::vector<FuzzDraw> draws;
  for (std::size_t s = 0; s < samples; ++s) {
    FuzzDraw d;
    d.n = 1 + static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(max_n));
    d.alpha = alphas[rng.next_u64() % alphas.size()];
    d.measure = measures[rng.next_u64() % measures.size()];
    d.tau = taus[rng.next_u64() % taus.size()];
    const auto terms = 1 + rng.next_u64() % max_terms;
    d.f = random_sparse_spectrum(rng, spread * d.n, terms);
    draws.push_back(std::move(d));
  }
  using Key = std::tuple<std::int64_t, double, double, std::string, double, std::int64_t>;
  std::map<Key, InfReport> infs;
  for (const double p : ps) {
    for (const double r : rs) {
      json row{{"p", p}, {"r", r}, {"samples", draws.size()}, {"provenance", kClosedForm}};
      std::size_t violations = 0;
      std::size_t modulus_violations = 0;
      double worst = -std::numeric_limits<double>::infinity();
      double worst_modulus = worst;
      try {
        const auto psi = power_psi(r);
        for (const auto& d : draws) {
          // the bound only ever integrates phi(k t / n) for harmonics k present in f
          const std::int64_t k_max = std::max(d.n, d.f.max_abs_harmonic());
          const Key key{d.n, d.alpha, p, d.measure, d.tau, k_max};
          const auto mu = named_measure(d.measure, d.tau);
          const auto phi = phi_alpha(d.alpha);
          auto it = infs.find(key);
          if (it == infs.end()) {
            it = infs.emplace(key, inf_quantity(d.n, phi, Exponent(p), mu, k_max)).first;
          }
          const auto b = jackson_bound(d.f, psi, phi, Exponent(p), mu, d.n, it->second);
          worst = std::max(worst, b.lhs - b.bound);
          worst_modulus = std::max(worst_modulus, b.lhs - b.modulus_bound);
          violations += b.holds ? 0 : 1;
          modulus_violations += b.modulus_holds ? 0 : 1;
        }
        row.update({{"violations", violations}, {"modulus_violations", modulus_violations},
                    {"worst_margin", draws.empty() ? 0.0 : worst},
                    {"worst_modulus_margin", draws.empty() ? 0.0 : worst_modulus},
                    {"pass", violations == 0 && modulus_violations == 0}});
      } catch (const Error& e) {
        row = failure_row(row, e.what());
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

inline Report run_modulus_oracle(ConfigSection& cfg, Report report) {
  const auto cases = cfg.get<std::size_t>("cases", 200);
  const auto alphas = cfg.list<double>("alpha", {0.5, 1.0, 2.0, 3.0});
  const auto ps = cfg.list<double>("p", {1.0, 2.0});
  const auto max_harmonic = cfg.get<std::int64_t>("max_harmonic", 8);
  const auto max_terms = cfg.get<std::size_t>("max_terms", 6);
  const auto tol = cfg.get<double>("tolerance", 1e-6);
  if (max_harmonic < 1 || max_terms < 1) {
    throw ConfigError(cfg.line(max_harmonic < 1 ? "max_harmonic" : "max_terms"), "must be positive");
  }
  cfg.finish();
  report.columns = with_trailer({"case", "alpha", "p", "t", "modulus", "oracle", "rel_err"});
  if (alphas.empty() || ps.empty()) {
    return report;
  }
  GaussianSource rng(report.seed);
  for (std::size_t i = 0; i < cases; ++i) {
    const double alpha = alphas[i % alphas.size()];
    const double p = ps[(i / alphas.size()) % ps.size()];
    const double t = kPi * (1.0 - rng.uniform()); // (0, pi]
    const auto terms = 1 + rng.next_u64() % max_terms;
    const auto f = random_sparse_spectrum(rng, max_harmonic, terms);
    json row{{"case", i}, {"alpha", alpha}, {"p", p}, {"t", t}, {"provenance", kOracle}};
    try {
      const double value = generalized_modulus(f, Exponent(p), phi_alpha(alpha), t);
      const double oracle = difference_modulus_oracle(f, Exponent(p), alpha, t);
      const double rel = value == oracle ? 0.0 : std::abs(value - oracle) / std::max(std::abs(oracle), 1e-300);
      row.update({{"modulus", value}, {"oracle", oracle}, {"rel_err", rel}, {"pass", rel <= tol}});
    } catch (const Error& e) {
      row = failure_row(row, e.what());
    }
    report.rows.push_back(row);
  }
  return report;
}

inline Report run_widths_certify(ConfigSection& cfg, Report report) {
  const auto mode = cfg.get<std::string>("mode", "fixed");
  if (mode != "fixed" && mode != "majorant") {
    throw ConfigError(cfg.line("mode"), "mode must be fixed or majorant");
  }
  const auto measure = cfg.get<std::string>("measure", "mu1");
  if (measure != "mu1" && measure != "mu2") {
    throw ConfigError(cfg.line("measure"), "measure must be mu1 or mu2");
  }
  const bool first = measure == "mu1";
  const auto taus = cfg.tau_list("tau", first ? std::vector<double>{kPi} : std::vector<double>{3 * kPi / 4});
  const auto ps = cfg.list<double>("p", {1.0, 2.0});
  const auto products = cfg.list<double>("alpha_p", first ? std::vector<double>{2.0, 4.0}
                                                          : std::vector<double>{1.0, 2.0, 3.0});
  const auto rs = cfg.list<double>("r", {1.0});
  const auto ns = cfg.list<std::int64_t>("n", {1, 2, 4});
  const auto samples = cfg.get<std::size_t>("samples", 200);
  const auto factor = cfg.get<std::int64_t>("k_max_factor", 64);
  const auto majorant_spec = cfg.get<std::string>("majorant", "power:1");
  const int majorant_line = cfg.line("majorant");
  cfg.finish();
  std::optional<Majorant> omega;
  if (mode == "majorant") {
    try {
      omega = parse_majorant(majorant_spec);
    } catch (const Error& e) {
      throw ConfigError(majorant_line, e.what());
    }
  }
  report.columns = with_trailer({"mode", "measure", "tau", "p", "alpha", "r", "n", "dimensions", "certified",
                                 "closed_form", "lower_bound", "upper_bound", "majorant_condition",
                                 "lower_samples", "lower_failures", "lower_worst_margin", "upper_samples",
                                 "upper_failures", "upper_max_En", "extremal_En", "verdict"});
  std::uint64_t row_seed = report.seed;
  for (const double tau : taus) {
    const auto mu = named_measure(measure, tau);
    for (const double p : ps) {
      for (const double ap : products) {
        const double alpha = ap / p;
        const auto phi = phi_alpha(alpha);
        std::optional<bool> condition;
        for (const auto n : ns) {
          std::optional<InfReport> inf;
          for (const double r : rs) {
            json row{{"mode", mode}, {"measure", measure}, {"tau", tau}, {"p", p}, {"alpha", alpha}, {"r", r},
                     {"n", n}, {"provenance", kClosedForm}};
            try {
              if (omega && !condition) {
                condition = majorant_condition_check(*omega, phi, Exponent(p), mu).passes;
              }
              row["majorant_condition"] = condition ? json(*condition) : json(nullptr);
              if (condition && !*condition) {
                // the class is outside the hypotheses; nothing to certify
                row.update({{"verdict", "not_applicable"}, {"pass", true}});
                report.rows.push_back(row);
                continue;
              }
              if (!inf) {
                inf = inf_quantity(n, phi, Exponent(p), mu, factor * n);
              }
              SmoothnessClass cls{power_psi(r), phi, Exponent(p), mu, FixedOrder{n}};
              if (omega) {
                cls.mode = MajorantBound{*omega};
              }
              const auto width = width_closed_form(cls, n, *inf);
              row.update({{"dimensions", {width.dimensions[0], width.dimensions[1]}},
                          {"certified", width.certified}, {"lower_bound", width.lower},
                          {"upper_bound", width.upper}});
              const auto lower = lower_certificate(cls, n, samples, row_seed);
              row.update({{"lower_samples", lower.samples}, {"lower_failures", lower.failures},
                          {"lower_worst_margin", lower.samples ? json(lower.max_observed) : json(nullptr)}});
              bool consistent = lower.failures == 0;
              if (width.certified) {
                const auto upper = upper_certificate(cls, n, samples, row_seed + 1, width);
                row.update({{"closed_form", *width.value}, {"upper_samples", upper.samples},
                            {"upper_failures", upper.failures},
                            {"upper_max_En", upper.samples ? json(upper.max_observed) : json(nullptr)},
                            {"extremal_En", *upper.extremal}});
                consistent = consistent && upper.failures == 0;
                row["verdict"] = consistent ? "consistent" : "violated";
              } else {
                row["verdict"] = consistent ? "interval" : "violated";
              }
              row["pass"] = consistent;
            } catch (const Error& e) {
              row = failure_row(row, e.what());
            }
            row_seed += 2;
            report.rows.push_back(row);
          }
        }
      }
    }
  }
  return report;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

inline std::string csv_cell(const json& value) {
  if (value.is_null()) {
    return {};
  }
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) {
      return s;
    }
    std::string quoted = "\"";
    for (const char c : s) {
      quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return quoted + "\"";
  }
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      joined += (joined.empty() ? "" : ";") + csv_cell(item);
    }
    return joined;
  }
  return value.dump();
}

} // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"closed-form-inf", "sharpness", "jackson-fuzz", "widths-certify",
                                              "modulus-oracle"};
  return names;
}

/// Runs the suite named by the settings or the config. Config and settings errors
/// raise ConfigError; assertion outcomes are recorded in the rows.
[[nodiscard]] inline Report run_suite(const YAML::Node& config, RunSettings& settings) {
  ConfigSection cfg(config.IsNull() ? YAML::Node(YAML::NodeType::Map) : config, "config");
  const auto suite_line = cfg.line("suite");
  const auto configured_suite = cfg.get<std::string>("suite", "");
  const auto configured_seed = cfg.get<std::uint64_t>("seed", 1);
  const auto configured_output = cfg.get<std::string>("output", "");
  const auto configured_format = cfg.get<std::string>("format", "json");
  const int format_line = cfg.line("format");

  Report report;
  report.suite = settings.suite.value_or(configured_suite);
  report.seed = settings.seed.value_or(configured_seed);
  if (!settings.output && !configured_output.empty()) {
    settings.output = configured_output;
  }
  if (!settings.format) {
    settings.format = configured_format;
  }
  if (*settings.format != "json" && *settings.format != "csv") {
    throw ConfigError(format_line, "format must be json or csv");
  }
  if (report.suite.empty()) {
    throw ConfigError(0, "no suite given (use --suite or a 'suite' key)");
  }
  try {
    if (report.suite == "closed-form-inf") {
      return detail::run_closed_form_inf(cfg, report);
    }
    if (report.suite == "sharpness") {
      return detail::run_sharpness(cfg, report);
    }
    if (report.suite == "jackson-fuzz") {
      return detail::run_jackson_fuzz(cfg, report);
    }
    if (report.suite == "modulus-oracle") {
      return detail::run_modulus_oracle(cfg, report);
    }
    if (report.suite == "widths-certify") {
      return detail::run_widths_certify(cfg, report);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, e.what());
  }
  throw ConfigError(suite_line, "unknown suite '" + report.suite + "'");
}

[[nodiscard]] inline json report_to_json(const Report& report, bool timestamp) {
  json out{{"suite", report.suite},
           {"seed", report.seed},
           {"columns", report.columns},
           {"rows", report.rows},
           {"summary", {{"rows", report.rows.size()}, {"failures", report.failures()}, {"passed", report.passed()}}}};
  if (timestamp) {
    out["timestamp"] = detail::utc_timestamp();
  }
  return out;
}

inline void write_report(std::ostream& out, const Report& report, const std::string& format, bool timestamp) {
  if (format == "csv") {
    std::vector<std::string> columns = report.columns;
    columns.emplace_back("error");
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << (row.contains(columns[i]) ? detail::csv_cell(row[columns[i]]) : "");
      }
      out << '\n';
    }
    return;
  }
  out << report_to_json(report, timestamp).dump(2) << '\n';
}

} // namespace spapprox::cli
