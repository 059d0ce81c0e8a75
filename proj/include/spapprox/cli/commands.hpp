#pragma once

#include <spapprox/cli/suites.hpp>

#include <optional>
#include <string>

namespace spapprox::cli {

/// Raw option values shared by the jackson and widths subcommands.
struct CommandInputs {
  std::string phi = "phi_alpha:1";
  double p = 2.0;
  std::string measure = "mu1";
  std::string tau = "pi";
  std::string psi = "power:0";
  std::int64_t n = 1;
  std::optional<std::int64_t> k_max;
  std::optional<std::string> spectrum;
  std::optional<std::string> majorant;
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

struct CommandResult {
  json output;
  /// 0 when every check in the output holds, 1 otherwise.
  int status = 0;
};

/// The parsed objects behind CommandInputs.
struct ResolvedInputs {
  ShapeFunction phi;
  Exponent p;
  WeightMeasure mu;
  PsiSequence psi;

  explicit ResolvedInputs(const CommandInputs& in)
      : phi(parse_shape(in.phi)), p(in.p), mu(parse_measure(in.measure, parse_tau(in.tau))),
        psi(parse_psi(in.psi)) {
    if (in.n < 1) {
      throw InvalidArgument("n must be positive");
    }
  }
};

namespace detail {

inline json inf_to_json(const InfReport& inf) {
  const auto equiv = equiv_condition_check(inf);
  return {{"n", inf.n},
          {"k_max", inf.k_max},
          {"value", inf.value},
          {"argmin_k", inf.argmin_k},
          {"attained_at_n", inf.attained_at_n},
          {"window_edge", inf.window_edge},
          {"value_at_n", inf.value_at_n},
          {"equivalence_holds", equiv.holds},
          {"equivalence_rel_diff", equiv.rel_diff}};
}

inline SmoothnessClass make_class(const ResolvedInputs& r, const CommandInputs& in) {
  SmoothnessClass cls{r.psi, r.phi, r.p, r.mu, FixedOrder{in.n}};
  if (in.majorant) {
    cls.mode = MajorantBound{parse_majorant(*in.majorant)};
  }
  return cls;
}

inline json width_to_json(const WidthValue& w) {
  return {{"n", w.n},
          {"dimensions", {w.dimensions[0], w.dimensions[1]}},
          {"certified", w.certified},
          {"value", w.value ? json(*w.value) : json(nullptr)},
          {"lower", w.lower},
          {"upper", w.upper},
          {"equivalence_rel_diff", w.equivalence.rel_diff}};
}

inline json evidence_to_json(const WidthEvidence& e) {
  return {{"samples", e.samples},
          {"failures", e.failures},
          {"max_observed", e.samples ? json(e.max_observed) : json(nullptr)},
          {"extremal", e.extremal ? json(*e.extremal) : json(nullptr)}};
}

} // namespace detail

[[nodiscard]] inline CommandResult jackson_inf(const CommandInputs& in) {
  const ResolvedInputs r(in);
  return {detail::inf_to_json(inf_quantity(in.n, r.phi, r.p, r.mu, in.k_max)), 0};
}

[[nodiscard]] inline CommandResult jackson_bound_command(const CommandInputs& in) {
  if (!in.spectrum) {
    throw InvalidArgument("jackson bound needs a spectrum file (--f)");
  }
  const ResolvedInputs r(in);
  const SpectralFunction f = read_spectrum(*in.spectrum);
  const auto inf = inf_quantity(in.n, r.phi, r.p, r.mu, in.k_max);
  const auto b = jackson_bound(f, r.psi, r.phi, r.p, r.mu, in.n, inf);
  json out{{"E_n", b.lhs},
           {"bound", b.bound},
           {"holds", b.holds},
           {"modulus_bound", b.modulus_bound},
           {"modulus_holds", b.modulus_holds},
           {"constant", b.constant},
           {"nu", b.nu},
           {"averaged_modulus", b.averaged},
           {"modulus", b.modulus},
           {"inf", detail::inf_to_json(inf)}};
  return {out, b.holds && b.modulus_holds ? 0 : 1};
}

[[nodiscard]] inline CommandResult jackson_sharp(const CommandInputs& in) {
  const ResolvedInputs r(in);
  const auto inf = inf_quantity(in.n, r.phi, r.p, r.mu, in.k_max);
  try {
    const auto cert = sharpness_certificate(r.phi, r.p, r.mu, r.psi, in.n, inf);
    return {{{"certified", true},
             {"constant", cert.constant},
             {"ratio", cert.ratio},
             {"rel_gap", cert.rel_gap},
             {"inf", detail::inf_to_json(inf)}},
            0};
  } catch (const NotCertified& e) {
    return {{{"certified", false}, {"reason", e.what()}, {"inf", detail::inf_to_json(inf)}}, 1};
  }
}

[[nodiscard]] inline CommandResult widths_value(const CommandInputs& in) {
  const ResolvedInputs r(in);
  const auto cls = detail::make_class(r, in);
  json out = detail::width_to_json(width_closed_form(cls, in.n, in.k_max));
  out["bernstein_radius"] = bernstein_radius(cls, in.n);
  return {out, 0};
}

[[nodiscard]] inline CommandResult widths_certify(const CommandInputs& in) {
  const ResolvedInputs r(in);
  const auto cls = detail::make_class(r, in);
  const auto inf = inf_quantity(in.n, r.phi, r.p, r.mu, in.k_max);
  const auto width = width_closed_form(cls, in.n, inf);
  const auto lower = lower_certificate(cls, in.n, in.samples, in.seed);
  json out{{"closed_form", width.value ? json(*width.value) : json(nullptr)},
           {"width", detail::width_to_json(width)},
           {"N", {width.dimensions[0], width.dimensions[1]}},
           {"lower_evidence", detail::evidence_to_json(lower)}};
  bool consistent = lower.failures == 0;
  if (width.certified) {
    const auto upper = upper_certificate(cls, in.n, in.samples, in.seed + 1, width);
    out["upper_evidence"] = detail::evidence_to_json(upper);
    consistent = consistent && upper.failures == 0;
  } else {
    out["upper_evidence"] = nullptr;
  }
  out["verdict"] = consistent ? "consistent" : "violated";
  return {out, consistent ? 0 : 1};
}

[[nodiscard]] inline CommandResult widths_majorant_check(const CommandInputs& in) {
  if (!in.majorant) {
    throw InvalidArgument("majorant-check needs --majorant");
  }
  const ResolvedInputs r(in);
  const auto check = majorant_condition_check(parse_majorant(*in.majorant), r.phi, r.p, r.mu);
  return {{{"passes", check.passes},
           {"worst_margin", check.worst_margin},
           {"worst_xi", check.worst_xi},
           {"worst_u", check.worst_u},
           {"pairs", check.pairs}},
          check.passes ? 0 : 1};
}

} // namespace spapprox::cli
