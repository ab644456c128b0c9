// mmconv: command-line front end.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "mmconv/cli.hpp"

namespace {

struct Common {
  std::string out;
  std::string config;
  std::vector<std::string> overrides;
  int jobs = 1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out,-o", c.out, "Output file (default: standard output)");
  sub->add_option("--config", c.config,
                  "Parameter file (default: $MMCONV_CONFIG or the shipped defaults)");
  sub->add_option("--set", c.overrides, "Override a parameter, key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design and analysis of microwave to mm-wave quantum converters"};
  app.set_version_flag("--version", std::string(mmconv::cli::kVersion));
  app.require_subcommand(1);

  Common common;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;

  auto flag = [&options](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + name, [&options, name](const std::string& v) { options[name] = v; }, help);
  };

  auto* quantize = app.add_subcommand("quantize", "Normal modes of a netlist");
  quantize->add_option("netlist", inputs, "Netlist JSON")->required()->expected(1);

  auto* synth = app.add_subcommand("synth", "Synthesize the coupling-optimal converter circuit");
  flag(synth, "fmw", "Microwave mode frequency, e.g. 7GHz");
  flag(synth, "fmm", "mm-wave mode frequency, e.g. 300GHz");
  flag(synth, "L", "Kinetic inductance, e.g. 1nH");
  flag(synth, "Istar", "Cross-over current, e.g. 0.05mA");
  flag(synth, "topology", "foster or cauer");
  flag(synth, "netlist", "Also write the realized netlist JSON here");

  auto* simulate = app.add_subcommand("simulate", "Single-photon wave-packet conversion");
  simulate->add_option("runspec", inputs, "Run spec JSON")->required()->expected(1);
  flag(simulate, "summary", "Write the JSON summary here");

  auto* noise = app.add_subcommand("noise", "Decoherence budget at the configured operating point");

  auto* sweep = app.add_subcommand("sweep", "Operating-space map over the two linewidths");
  flag(sweep, "grid", "mw_min:mw_max:n,mm_min:mm_max:n, e.g. 0.1MHz:10GHz:60,1MHz:300GHz:60");
  flag(sweep, "boundary", "Also write the regime boundary locus CSV here");
  sweep->add_option("--jobs,-j", common.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* table1 = app.add_subcommand("table1", "Derived quantities at the operating point");
  auto* table2 = app.add_subcommand("table2", "Thermal link comparison table (CSV)");

  auto* linkbudget = app.add_subcommand("linkbudget", "Added thermal noise of a lossy link");
  flag(linkbudget, "freq", "Carrier frequency, e.g. 300GHz");
  flag(linkbudget, "temp", "Link temperature, e.g. 4K");
  flag(linkbudget, "atten", "Attenuation, e.g. 0.08dB/m");
  flag(linkbudget, "length", "Link length, e.g. 10m");
  flag(linkbudget, "nmax", "Added-photon threshold (default 0.1)");

  for (auto* sub : {quantize, synth, simulate, noise, sweep, table1, table2, linkbudget}) {
    add_common(sub, common);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mmconv::cli::kExitValidation;
  }

  mmconv::cli::RunSpec spec;
  spec.command = app.get_subcommands().front()->get_name();
  spec.inputs = inputs;
  spec.out = common.out;
  spec.config = common.config;
  spec.overrides = common.overrides;
  spec.jobs = common.jobs;
  spec.options = options;
  return mmconv::cli::run(spec, std::cout, std::cerr);
}
