#include <spapprox/cli/commands.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spapprox;
using namespace spapprox::cli;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("spapprox_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

Report run_text(const std::string& yaml) {
  RunSettings settings;
  return run_suite(load_yaml(yaml), settings);
}

int error_line(const std::string& yaml) {
  try {
    (void)run_text(yaml);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

} // namespace

TEST(Specs, ParseTau) {
  EXPECT_DOUBLE_EQ(parse_tau("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_tau("3pi/4"), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_tau("3*pi/4"), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_tau("0.5*pi"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_tau("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_tau("1.25"), 1.25);
  EXPECT_THROW((void)parse_tau("pi/0"), SpecError);
  EXPECT_THROW((void)parse_tau("pix"), SpecError);
  EXPECT_THROW((void)parse_tau("abc"), SpecError);
}

TEST(Specs, SpectrumRoundTripAndErrors) {
  const SpectralFunction f{{-2, {1.0, 0.5}}, {3, 2.0}};
  EXPECT_EQ(spectrum_from_json(spectrum_to_json(f)), f);
  EXPECT_EQ(spectrum_from_json(json::parse(R"([{"k": 1, "re": 2}])")), (SpectralFunction{{1, 2.0}}));
  EXPECT_THROW((void)spectrum_from_json(json::parse(R"([{"k": 1, "re": 2}, {"k": 1, "re": 1}])")), SpecError);
  EXPECT_THROW((void)spectrum_from_json(json::parse(R"([{"k": 1, "re": 2, "phase": 0}])")), SpecError);
  EXPECT_THROW((void)spectrum_from_json(json::parse(R"([{"k": 1.5, "re": 2}])")), SpecError);
  EXPECT_THROW((void)spectrum_from_json(json::parse(R"({"k": 1})")), SpecError);
  EXPECT_THROW((void)read_spectrum("/nonexistent/spectrum.json"), SpecError);
}

TEST(Specs, ShapePsiMeasureMajorant) {
  EXPECT_DOUBLE_EQ(parse_shape("phi_alpha:2")(kPi), phi_alpha(2)(kPi));
  const auto table = write_temp("shape.json", R"({"points": [[0, 0], [1, 1]], "cap_point": 1, "sup_value": 1})");
  EXPECT_DOUBLE_EQ(parse_shape("table:" + table)(0.5), 0.5);
  EXPECT_THROW((void)parse_shape("sinc:1"), SpecError);
  EXPECT_THROW((void)parse_shape("phi_alpha:x"), SpecError);

  EXPECT_EQ(parse_psi("power:2")(2), power_psi(2)(2));
  EXPECT_EQ(parse_psi("const:3")(7), Amplitude(3.0, 0.0));
  const auto psi_table =
      write_temp("psi.json", R"({"values": [{"k": 1, "re": 0.5}, {"k": -1, "re": 0.5}], "bound": 1, "psi_class": true})");
  const auto psi = parse_psi("table:" + psi_table);
  EXPECT_EQ(psi(1), Amplitude(0.5, 0.0));
  EXPECT_TRUE(psi.psi_class);
  EXPECT_THROW((void)parse_psi("log:1"), SpecError);

  EXPECT_DOUBLE_EQ(parse_measure("mu1", kPi).total_mass(), WeightMeasure::mu1(kPi).total_mass());
  EXPECT_DOUBLE_EQ(parse_measure("atoms:[pi/2:1, pi:0.5]", kPi).total_mass(), 1.5);
  EXPECT_THROW((void)parse_measure("atoms:[1]", kPi), SpecError);
  EXPECT_THROW((void)parse_measure("lebesgue", kPi), SpecError);

  EXPECT_DOUBLE_EQ(parse_majorant("power:2")(3.0), 9.0);
  EXPECT_DOUBLE_EQ(parse_majorant("power:1:0.5")(3.0), 1.5);
  EXPECT_THROW((void)parse_majorant("log:1"), SpecError);
}

TEST(Config, LineNumbersOnErrors) {
  EXPECT_EQ(error_line("suite: closed-form-inf\nlambda: [1]\nbogus: 3\n"), 3);
  EXPECT_EQ(error_line("suite: closed-form-inf\n\nn: fish\n"), 3);
  EXPECT_EQ(error_line("suite: nope\n"), 1);
  EXPECT_EQ(error_line("suite: closed-form-inf\nformat: xml\n"), 2);
  EXPECT_EQ(error_line("suite: sharpness\nmeasure: mu3\n"), 2);
  EXPECT_EQ(error_line("suite: closed-form-inf\nlambda: [1, 2\n"), 3);
  EXPECT_THROW((void)run_text("lambda: [1]\n"), ConfigError);
}

TEST(Config, EmptyGridGivesEmptyReport) {
  const auto report = run_text("suite: closed-form-inf\nlambda: []\n");
  EXPECT_TRUE(report.rows.empty());
  EXPECT_TRUE(report.passed());
  const auto j = report_to_json(report, false);
  EXPECT_EQ(j["summary"]["rows"], 0);
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Suites, ClosedFormInfSmallGrid) {
  const auto report = run_text("suite: closed-form-inf\nlambda: [1, 2]\nn: [1]\n");
  ASSERT_EQ(report.rows.size(), 2u);
  EXPECT_TRUE(report.passed());
  EXPECT_NEAR(report.rows[1]["computed"].get<double>(), 8.0 / 3.0, 1e-9);
}

TEST(Suites, ConstantOverrideIsDetected) {
  const auto report = run_text("suite: sharpness\np: [2]\nalpha_p: [2]\nr: [0]\nn: [1]\nconstant_override: 0.5\n");
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_EQ(report.failures(), 1u);
}

TEST(Suites, DeterministicOutputWithoutTimestamp) {
  const std::string yaml = "suite: modulus-oracle\ncases: 5\nseed: 42\n";
  std::ostringstream a;
  std::ostringstream b;
  write_report(a, run_text(yaml), "json", false);
  write_report(b, run_text(yaml), "json", false);
  EXPECT_EQ(a.str(), b.str());
  RunSettings other;
  other.seed = 43;
  std::ostringstream c;
  write_report(c, run_suite(load_yaml(yaml), other), "json", false);
  EXPECT_NE(a.str(), c.str());
}

TEST(Suites, CsvHeaderMatchesColumns) {
  const auto report = run_text("suite: closed-form-inf\nlambda: [1]\n");
  std::ostringstream out;
  write_report(out, report, "csv", false);
  std::string header;
  std::getline(std::istringstream(out.str()), header);
  EXPECT_EQ(header, "lambda,n,k_max,computed,expected,rel_err,argmin_k,provenance,pass,error");
}

TEST(Commands, JacksonAndWidths) {
  CommandInputs in;
  in.n = 2;
  in.k_max = 128;
  const auto inf = jackson_inf(in);
  EXPECT_NEAR(inf.output["value"].get<double>(), 4.0, 1e-9);
  EXPECT_EQ(inf.output["argmin_k"], 2);

  in.psi = "power:1";
  const auto sharp = jackson_sharp(in);
  EXPECT_EQ(sharp.status, 0);
  EXPECT_LE(sharp.output["rel_gap"].get<double>(), 1e-6);

  in.spectrum = write_temp("f.json", R"([{"k": 3, "re": 1}, {"k": -5, "re": 0, "im": 2}])");
  EXPECT_EQ(jackson_bound_command(in).status, 0);

  const auto width = widths_value(in);
  EXPECT_NEAR(width.output["value"].get<double>(), std::sqrt(0.5) / 2.0, 1e-10);

  in.majorant = "power:1";
  in.phi = "phi_alpha:1.4";
  in.measure = "mu2";
  in.tau = "3pi/4";
  EXPECT_EQ(widths_majorant_check(in).status, 0);

  CommandInputs bad;
  bad.n = 0;
  EXPECT_THROW((void)jackson_inf(bad), InvalidArgument);
  CommandInputs uncertified;
  uncertified.measure = "mu2";
  uncertified.tau = "2pi";
  uncertified.n = 4;
  uncertified.k_max = 64;
  EXPECT_EQ(jackson_sharp(uncertified).status, 1);
}
