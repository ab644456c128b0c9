#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mmconv/circuit.hpp"
#include "mmconv/cli.hpp"
#include "mmconv/config.hpp"
#include "mmconv/constants.hpp"
#include "mmconv/netlist_json.hpp"
#include "mmconv/synthesis.hpp"
#include "mmconv/units.hpp"

using namespace mmconv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    std::random_device rd;
    fs::path p = fs::temp_directory_path() / ("mmconv_cli_" + std::to_string(rd()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << text;
  return p;
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run(const cli::RunSpec& spec) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(spec, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

cli::RunSpec spec_for(const std::string& command) {
  cli::RunSpec s;
  s.command = command;
  return s;
}

bool mentions(const std::vector<config::Diagnostic>& diags, const std::string& text) {
  for (const auto& d : diags) {
    if (config::format(d).find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("shipped configuration loads cleanly") {
  config::Parameters p;
  std::vector<config::Diagnostic> diags;
  config::load_parameters(config::default_config_path(), p, diags);
  CHECK(diags.empty());
  CHECK(p.range_problems().empty());
  CHECK(p.f_mm == 300e9);
  const auto rows = config::load_link_table(fs::path(MMCONV_DATA_DIR) / p.link_table);
  CHECK(rows.size() == 12);
}

TEST_CASE("configuration diagnostics carry line numbers") {
  const auto path = write_file("bad.conf", "f_mw = 7GHz\neta = 1.2\nbogus = 3\n");
  config::Parameters p;
  std::vector<config::Diagnostic> diags;
  config::load_parameters(path, p, diags);
  CHECK(mentions(diags, "bad.conf:3"));
  const auto problems = p.range_problems();
  REQUIRE(problems.size() == 1);
  CHECK(problems[0].find("eta") != std::string::npos);
}

TEST_CASE("unknown override lists the valid keys") {
  auto s = spec_for("table1");
  s.overrides = {"kappa_xx=1MHz"};
  const auto diags = cli::validate(s);
  REQUIRE(diags.size() == 1);
  CHECK(mentions(diags, "kappa_mw"));
  CHECK(mentions(diags, "Q_mm_int"));
  CHECK(run(s).code == cli::kExitValidation);
}

TEST_CASE("out-of-range transmittivity is rejected") {
  auto s = spec_for("table1");
  s.overrides = {"eta=1.2"};
  const auto diags = cli::validate(s);
  CHECK(mentions(diags, "eta"));
  const auto o = run(s);
  CHECK(o.code == cli::kExitValidation);
  CHECK(o.out.empty());
}

TEST_CASE("netlist diagnostics name the element") {
  const auto path = write_file(
      "neg.json",
      R"({"nodes": 3, "capacitors": [[1, 0, "1pF"], [2, 0, "1pF"], [1, 2, "-1pF"]],
          "inductors": [[1, 0, "1nH"]]})");
  auto s = spec_for("quantize");
  s.inputs = {path.string()};
  const auto diags = cli::validate(s);
  CHECK(mentions(diags, "capacitors[2]"));
  CHECK(run(s).code == cli::kExitValidation);
}

TEST_CASE("unknown command and flags") {
  CHECK(run(spec_for("frobnicate")).code == cli::kExitValidation);
  auto s = spec_for("table1");
  s.options["grid"] = "1:2:3,4:5:6";
  CHECK(mentions(cli::validate(s), "not accepted"));
}

TEST_CASE("circuit failures surface their error code") {
  const auto path = write_file(
      "float.json", R"({"nodes": 3, "capacitors": [[1, 0, "1pF"]], "inductors": [[1, 0, "1nH"]]})");
  auto s = spec_for("quantize");
  s.inputs = {path.string()};
  CHECK(cli::validate(s).empty());
  const auto o = run(s);
  CHECK(o.code == cli::kExitValidation);
  CHECK(o.err.find("SingularCapacitance") != std::string::npos);
}

TEST_CASE("every command runs and is deterministic") {
  const auto sim = write_file("sim.json", R"({"kappa_a": "10MHz", "kappa_b": "200MHz",
      "cooperativity": 1, "duration": "2us", "pulse": {"shape": "gaussian", "port": "a",
      "center": "1us", "width": "100ns"}})");
  const auto net = write_file(
      "lc.json", R"({"nodes": 2, "capacitors": [[1, 0, "1pF"]], "inductors": [[1, 0, "1nH"]],
      "nonlinear": {"i": 1, "j": 0, "L": "1nH", "Istar": "50uA"}})");
  std::vector<cli::RunSpec> specs;
  specs.push_back(spec_for("table1"));
  specs.push_back(spec_for("table2"));
  specs.push_back(spec_for("synth"));
  specs.push_back(spec_for("noise"));
  auto sweep = spec_for("sweep");
  sweep.options["grid"] = "1MHz:1GHz:4,10MHz:10GHz:5";
  sweep.jobs = 3;
  specs.push_back(sweep);
  auto lb = spec_for("linkbudget");
  lb.options = {{"freq", "300GHz"}, {"temp", "4K"}, {"atten", "0.08dB/m"}, {"length", "10m"}};
  specs.push_back(lb);
  auto q = spec_for("quantize");
  q.inputs = {net.string()};
  specs.push_back(q);
  auto s = spec_for("simulate");
  s.inputs = {sim.string()};
  specs.push_back(s);

  for (const auto& spec : specs) {
    CAPTURE(spec.command);
    const auto a = run(spec);
    const auto b = run(spec);
    CHECK(a.code == cli::kExitOk);
    CHECK(a.err.empty());
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}

TEST_CASE("sweep output does not depend on the job count") {
  auto s = spec_for("sweep");
  s.options["grid"] = "1MHz:1GHz:7,10MHz:10GHz:6";
  s.jobs = 1;
  const auto one = run(s);
  s.jobs = 5;
  CHECK(run(s).out == one.out);
}

TEST_CASE("synthesized netlist round-trips through quantize") {
  for (const char* topology : {"foster", "cauer"}) {
    CAPTURE(topology);
    const auto net = scratch_dir() / (std::string("synth_") + topology + ".json");
    auto s = spec_for("synth");
    s.options = {{"topology", topology}, {"netlist", net.string()}};
    const auto synth = run(s);
    REQUIRE(synth.code == cli::kExitOk);
    const auto design = json::parse(synth.out);
    CHECK(design.at("saturation_ratio").get<double>() == doctest::Approx(1.0).epsilon(1e-6));

    auto q = spec_for("quantize");
    q.inputs = {net.string()};
    const auto quant = run(q);
    REQUIRE(quant.code == cli::kExitOk);
    const auto modes = json::parse(quant.out).at("modes").at("frequencies_Hz");
    const auto expected = design.at("mode_frequencies_Hz");
    REQUIRE(modes.size() == expected.size());
    for (std::size_t k = 0; k < modes.size(); ++k) {
      CHECK(modes[k].get<double>() ==
            doctest::Approx(expected[k].get<double>()).epsilon(1e-6));
    }
  }
}

TEST_CASE("quantize reports the sum rule for a single oscillator") {
  const auto net = write_file(
      "osc.json", R"({"nodes": 2, "capacitors": [[1, 0, "1pF"]], "inductors": [],
      "nonlinear": {"i": 1, "j": 0, "L": "1nH", "Istar": "50uA"}})");
  auto q = spec_for("quantize");
  q.inputs = {net.string()};
  const auto o = run(q);
  REQUIRE(o.code == cli::kExitOk);
  const auto doc = json::parse(o.out);
  const double f = doc.at("modes").at("frequencies_Hz")[0].get<double>();
  CHECK(f == doctest::Approx(1.0 / (kTwoPi * std::sqrt(1e-21))).epsilon(1e-12));
  CHECK(doc.at("nonlinear").at("sum_rule_residual").get<double>() < 1e-10);
}

TEST_CASE("table2 reproduces the tabulated occupations") {
  const auto o = run(spec_for("table2"));
  REQUIRE(o.code == cli::kExitOk);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);  // version
  std::getline(in, line);  // header
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 12);
    CAPTURE(cells[0]);
    const double nbar = std::stod(cells[6]);
    if (cells[9].find_first_not_of("0123456789.e-") != std::string::npos) continue;
    const double ref = std::stod(cells[9]);
    if (ref > 0.1) CHECK(nbar == doctest::Approx(ref).epsilon(0.1));
  }
  CHECK(rows == 12);
}

TEST_CASE("linkbudget threshold inversion") {
  auto s = spec_for("linkbudget");
  s.options = {{"freq", "300GHz"}, {"temp", "70K"}, {"atten", "0.15dB/m"}, {"nmax", "0.1"}};
  const auto o = run(s);
  REQUIRE(o.code == cli::kExitOk);
  const double l = json::parse(o.out).at("threshold_length_m").get<double>();
  s.options.erase("nmax");
  s.options["length"] = units::format_double(l);
  const auto at = run(s);
  REQUIRE(at.code == cli::kExitOk);
  CHECK(json::parse(at.out).at("added_photons").get<double>() == doctest::Approx(0.1).epsilon(1e-9));
}

}  // TEST_SUITE
