#include <spapprox/cli/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>

namespace {

using spapprox::cli::CommandInputs;
using spapprox::cli::CommandResult;

void add_common(CLI::App* cmd, CommandInputs& in) {
  cmd->add_option("--phi", in.phi, "shape: phi_alpha:<a> or table:<path>")->capture_default_str();
  cmd->add_option("--p", in.p, "exponent p >= 1")->capture_default_str();
  cmd->add_option("--measure", in.measure, "mu1, mu2, atoms:[t:m,...] or density:<path>")->capture_default_str();
  cmd->add_option("--tau", in.tau, "measure support [0, tau]; accepts pi expressions such as 3pi/4")
      ->capture_default_str();
  cmd->add_option("--n", in.n, "approximation order")->capture_default_str();
  cmd->add_option("--k-max", in.k_max, "last k of the infimum sweep (default 64n + 1024)");
}

void add_psi(CLI::App* cmd, CommandInputs& in) {
  cmd->add_option("--psi", in.psi, "multiplier: power:<r>, const:<c> or table:<path>")->capture_default_str();
}

int emit(const nlohmann::json& output, const std::optional<std::string>& out) {
  if (out) {
    std::ofstream file(*out);
    if (!file) {
      std::cerr << "cannot write '" << *out << "'\n";
      return 2;
    }
    file << output.dump(2) << '\n';
  } else {
    std::cout << output.dump(2) << '\n';
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best approximation, moduli of smoothness, Jackson constants and widths in S^p"};
  app.require_subcommand(0, 1);

  std::optional<std::string> config_path;
  spapprox::cli::RunSettings settings;
  bool no_timestamp = false;
  app.add_option("--config", config_path, "suite config (YAML)");
  app.add_option("--suite", settings.suite, "closed-form-inf, sharpness, jackson-fuzz, widths-certify or modulus-oracle");
  app.add_option("--seed", settings.seed, "seed for the sampling suites");
  app.add_option("--out", settings.output, "report path (default stdout)");
  app.add_option("--format", settings.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp so reports are byte-identical");

  CommandInputs in;
  std::function<CommandResult(const CommandInputs&)> action;
  auto bind = [&](CLI::App* cmd, CommandResult (*fn)(const CommandInputs&)) {
    cmd->callback([&action, fn] { action = fn; });
  };

  auto* jackson = app.add_subcommand("jackson", "Jackson-type inequality tools")->require_subcommand(1);
  auto* inf = jackson->add_subcommand("inf", "infimum of the k-sweep and the equivalence condition");
  add_common(inf, in);
  bind(inf, spapprox::cli::jackson_inf);
  auto* bound = jackson->add_subcommand("bound", "evaluate the Jackson bound for a spectrum");
  add_common(bound, in);
  add_psi(bound, in);
  bound->add_option("--f", in.spectrum, "spectrum JSON [{k, re, im}]")->required();
  bind(bound, spapprox::cli::jackson_bound_command);
  auto* sharp = jackson->add_subcommand("sharp", "sharp constant and extremal-function certificate");
  add_common(sharp, in);
  add_psi(sharp, in);
  bind(sharp, spapprox::cli::jackson_sharp);

  auto* widths = app.add_subcommand("widths", "width values and certificates")->require_subcommand(1);
  auto* value = widths->add_subcommand("value", "closed-form width or two-sided interval");
  auto* certify = widths->add_subcommand("certify", "sampled lower and upper certificates");
  for (auto* cmd : {value, certify}) {
    add_common(cmd, in);
    add_psi(cmd, in);
    cmd->add_option("--majorant", in.majorant, "majorant class: power:<beta>[:<scale>]");
  }
  certify->add_option("--samples", in.samples, "random draws per certificate side")->capture_default_str();
  certify->add_option("--seed", in.seed, "seed of the lower certificate; the upper one uses seed + 1")->capture_default_str();
  bind(value, spapprox::cli::widths_value);
  bind(certify, spapprox::cli::widths_certify);
  auto* majorant = widths->add_subcommand("majorant-check", "grid check of the majorant condition");
  add_common(majorant, in);
  majorant->add_option("--majorant", in.majorant, "power:<beta>[:<scale>]")->required();
  bind(majorant, spapprox::cli::widths_majorant_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  settings.timestamp = !no_timestamp;

  try {
    if (action) {
      const CommandResult result = action(in);
      const int written = emit(result.output, settings.output);
      return written != 0 ? written : result.status;
    }
    if (!config_path && !settings.suite) {
      std::cerr << app.help();
      return 2;
    }
    const YAML::Node config = config_path ? spapprox::cli::load_yaml_file(*config_path) : YAML::Node();
    const auto report = spapprox::cli::run_suite(config, settings);
    if (settings.output) {
      std::ofstream file(*settings.output);
      if (!file) {
        std::cerr << "cannot write '" << *settings.output << "'\n";
        return 2;
      }
      spapprox::cli::write_report(file, report, *settings.format, settings.timestamp);
      std::cout << report.suite << ": " << report.rows.size() << " rows, " << report.failures() << " failed\n";
    } else {
      spapprox::cli::write_report(std::cout, report, *settings.format, settings.timestamp);
    }
    return report.passed() ? 0 : 1;
  } catch (const spapprox::cli::ConfigError& e) {
    std::cerr << (config_path ? *config_path + ":" : std::string()) << e.what() << '\n';
    return 2;
  } catch (const spapprox::cli::SpecError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const spapprox::InvalidArgument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const spapprox::Error& e) {
    std::cerr << "computation failed: " << e.what() << '\n';
    return 1;
  }
}
