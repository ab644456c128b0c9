#include "mmconv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mmconv/budget.hpp"
#include "mmconv/circuit.hpp"
#include "mmconv/constants.hpp"
#include "mmconv/converter.hpp"
#include "mmconv/error.hpp"
#include "mmconv/link.hpp"
#include "mmconv/netlist_json.hpp"
#include "mmconv/noise.hpp"
#include "mmconv/sweep.hpp"
#include "mmconv/synthesis.hpp"
#include "mmconv/units.hpp"

namespace mmconv::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using config::Diagnostic;

struct SimulationSpec {
  converter::TwoModeConverter conv;
  converter::WavePacket::Shape shape = converter::WavePacket::Shape::Gaussian;
  converter::WavePacket::Port port = converter::WavePacket::Port::A;
  double center = 0.0;
  double width = 0.0;
  double duration = 0.0;
  double dt = 0.0;  // 0: max_time_step
};

struct Prepared {
  config::Parameters params;
  fs::path config_path;
  circuit::Netlist netlist;
  SimulationSpec sim;
  link::LinkModel link;
  double length = 0.0;
  double n_max = 0.1;
  std::vector<link::LinkRow> link_rows;
};

// ---------------------------------------------------------------- parsing

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) s += (s.empty() ? "" : ", ") + i;
  return s;
}

bool read_json(const std::string& path, json& doc, std::vector<Diagnostic>& diags) {
  std::ifstream in(path);
  if (!in) {
    diags.push_back({path, "cannot open file"});
    return false;
  }
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    diags.push_back({path, e.what()});
    return false;
  }
  return true;
}

// Parses a quantity field of a JSON object; returns false (with a diagnostic)
// when it is missing and required, malformed, or negative.
bool json_quantity(const json& obj, const std::string& key, const char* unit,
                   const std::string& where, std::vector<Diagnostic>& diags, double& value,
                   bool required, bool allow_zero = false) {
  if (!obj.contains(key)) {
    if (required) diags.push_back({where + "." + key, "missing"});
    return !required;
  }
  const json& v = obj.at(key);
  try {
    if (v.is_number()) {
      value = v.get<double>();
    } else if (v.is_string()) {
      value = units::parse_quantity(v.get<std::string>(), unit);
    } else {
      diags.push_back({where + "." + key, std::string("expected a quantity in ") + unit});
      return false;
    }
  } catch (const Error& e) {
    diags.push_back({where + "." + key, e.what()});
    return false;
  }
  if (allow_zero ? !(value >= 0.0) : !(value > 0.0)) {
    diags.push_back({where + "." + key, allow_zero ? "must be non-negative" : "must be positive"});
    return false;
  }
  return true;
}

void check_keys(const json& obj, const std::vector<std::string>& valid, const std::string& where,
                std::vector<Diagnostic>& diags) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(valid.begin(), valid.end(), key) == valid.end()) {
      diags.push_back({where.empty() ? key : where + "." + key,
                       "unknown key; valid keys: " + join(valid)});
    }
  }
}

SimulationSpec parse_simulation(const json& doc, const std::string& path,
                                std::vector<Diagnostic>& diags) {
  SimulationSpec s;
  if (!doc.is_object()) {
    diags.push_back({path, "run spec must be a JSON object"});
    return s;
  }
  check_keys(doc,
             {"kappa_a", "kappa_b", "kappa_a_int", "kappa_b_int", "cooperativity", "g", "pulse",
              "duration", "dt"},
             "", diags);
  double ka = 0, kb = 0, ka_int = 0, kb_int = 0;
  bool ok = json_quantity(doc, "kappa_a", "Hz", path, diags, ka, true);
  ok = json_quantity(doc, "kappa_b", "Hz", path, diags, kb, true) && ok;
  json_quantity(doc, "kappa_a_int", "Hz", path, diags, ka_int, false, true);
  json_quantity(doc, "kappa_b_int", "Hz", path, diags, kb_int, false, true);
  s.conv.kappa_a = angular(ka);
  s.conv.kappa_b = angular(kb);
  s.conv.kappa_a_int = angular(ka_int);
  s.conv.kappa_b_int = angular(kb_int);
  if (doc.contains("g") && doc.contains("cooperativity")) {
    diags.push_back({path, "give either g or cooperativity, not both"});
  } else if (doc.contains("g")) {
    double g = 0.0;
    if (json_quantity(doc, "g", "Hz", path, diags, g, true, true)) s.conv.g = angular(g);
  } else if (ok) {
    double c = 1.0;
    json_quantity(doc, "cooperativity", "", path, diags, c, false, true);
    s.conv = converter::TwoModeConverter::matched(s.conv.kappa_a, s.conv.kappa_b, c);
    s.conv.kappa_a_int = angular(ka_int);
    s.conv.kappa_b_int = angular(kb_int);
  }

  json_quantity(doc, "duration", "s", path, diags, s.duration, true);
  json_quantity(doc, "dt", "s", path, diags, s.dt, false);
  if (!doc.contains("pulse") || !doc.at("pulse").is_object()) {
    diags.push_back({path + ".pulse", "missing pulse object"});
    return s;
  }
  const json& p = doc.at("pulse");
  const std::string where = path + ".pulse";
  check_keys(p, {"shape", "port", "center", "width"}, "pulse", diags);
  const std::string shape = p.value("shape", "gaussian");
  if (shape == "gaussian") {
    s.shape = converter::WavePacket::Shape::Gaussian;
  } else if (shape == "square") {
    s.shape = converter::WavePacket::Shape::Square;
  } else {
    diags.push_back({where + ".shape", "must be gaussian or square"});
  }
  const std::string port = p.value("port", "a");
  if (port == "a") {
    s.port = converter::WavePacket::Port::A;
  } else if (port == "b") {
    s.port = converter::WavePacket::Port::B;
  } else {
    diags.push_back({where + ".port", "must be a or b"});
  }
  json_quantity(p, "center", "s", where, diags, s.center, true, true);
  json_quantity(p, "width", "s", where, diags, s.width, true);
  return s;
}

void parse_option(const RunSpec& spec, const char* key, const char* unit, double& value,
                  std::vector<Diagnostic>& diags, bool required) {
  const auto it = spec.options.find(key);
  if (it == spec.options.end()) {
    if (required) diags.push_back({std::string("--") + key, "required"});
    return;
  }
  try {
    value = units::parse_quantity(it->second, unit);
  } catch (const Error& e) {
    diags.push_back({std::string("--") + key, e.what()});
  }
}

Prepared prepare(const RunSpec& spec, std::vector<Diagnostic>& diags) {
  Prepared p;
  const auto& cmds = commands();
  if (std::find(cmds.begin(), cmds.end(), spec.command) == cmds.end()) {
    diags.push_back({"command", "unknown command '" + spec.command + "'; valid: " + join(cmds)});
    return p;
  }
  const auto& allowed = command_options(spec.command);
  for (const auto& [key, value] : spec.options) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      diags.push_back({"--" + key, "not accepted by " + spec.command +
                                       (allowed.empty() ? "" : "; valid: " + join(allowed))});
    }
  }
  if (spec.jobs < 1) diags.push_back({"--jobs", "must be >= 1"});

  const std::size_t need_inputs = (spec.command == "quantize" || spec.command == "simulate") ? 1 : 0;
  if (spec.inputs.size() != need_inputs) {
    diags.push_back({spec.command, "expects " + std::to_string(need_inputs) + " input file(s), got " +
                                       std::to_string(spec.inputs.size())});
  }

  p.config_path = spec.config.empty() ? config::default_config_path() : fs::path(spec.config);
  if (!fs::exists(p.config_path)) {
    diags.push_back({p.config_path.string(), "configuration file not found"});
  } else {
    config::load_parameters(p.config_path, p.params, diags);
  }
  for (const auto& o : spec.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) {
      diags.push_back({"--set " + o, "expected key=value"});
      continue;
    }
    try {
      p.params.set(o.substr(0, eq), o.substr(eq + 1));
    } catch (const Error& e) {
      diags.push_back({"--set " + o, e.what()});
    }
  }

  if (spec.command == "synth") {
    static const std::pair<const char*, const char*> flags[] = {
        {"fmw", "f_mw"}, {"fmm", "f_mm"}, {"L", "L"}, {"Istar", "Istar"}, {"topology", "topology"}};
    for (const auto& [flag, key] : flags) {
      const auto it = spec.options.find(flag);
      if (it == spec.options.end()) continue;
      try {
        p.params.set(key, it->second);
      } catch (const Error& e) {
        diags.push_back({std::string("--") + flag, e.what()});
      }
    }
  }
  if (spec.command == "sweep") {
    if (const auto it = spec.options.find("grid"); it != spec.options.end()) {
      // mw_min:mw_max:n,mm_min:mm_max:n
      std::vector<std::string> parts;
      std::string cur;
      for (char c : it->second) {
        if (c == ':' || c == ',') {
          parts.push_back(cur);
          cur.clear();
        } else {
          cur += c;
        }
      }
      parts.push_back(cur);
      if (parts.size() != 6) {
        diags.push_back({"--grid", "expected mw_min:mw_max:n,mm_min:mm_max:n"});
      } else {
        static const char* keys[] = {"sweep_mw_min", "sweep_mw_max", "sweep_mw_points",
                                     "sweep_mm_min", "sweep_mm_max", "sweep_mm_points"};
        for (int k = 0; k < 6; ++k) {
          try {
            p.params.set(keys[k], parts[static_cast<std::size_t>(k)]);
          } catch (const Error& e) {
            diags.push_back({"--grid", e.what()});
          }
        }
      }
    }
  }
  for (const auto& msg : p.params.range_problems()) diags.push_back({"parameters", msg});

  if (spec.command == "quantize" && spec.inputs.size() == 1) {
    json doc;
    if (read_json(spec.inputs[0], doc, diags)) {
      std::vector<Diagnostic> local;
      p.netlist = io::parse_netlist(doc, local);
      for (auto& d : local) diags.push_back({spec.inputs[0] + ": " + d.where, d.message});
    }
  }
  if (spec.command == "simulate" && spec.inputs.size() == 1) {
    json doc;
    if (read_json(spec.inputs[0], doc, diags)) p.sim = parse_simulation(doc, spec.inputs[0], diags);
  }
  if (spec.command == "linkbudget") {
    double f = 0.0;
    parse_option(spec, "freq", "Hz", f, diags, true);
    parse_option(spec, "temp", "K", p.link.temperature, diags, true);
    parse_option(spec, "atten", "dB/m", p.link.atten_db_per_m, diags, true);
    parse_option(spec, "length", "m", p.length, diags, false);
    parse_option(spec, "nmax", "", p.n_max, diags, false);
    p.link.omega = angular(f);
    if (spec.options.count("freq") && !(f > 0.0)) diags.push_back({"--freq", "must be positive"});
    if (p.link.temperature < 0.0) diags.push_back({"--temp", "must be non-negative"});
    if (spec.options.count("atten") && !(p.link.atten_db_per_m > 0.0)) {
      diags.push_back({"--atten", "must be positive"});
    }
    if (!(p.length >= 0.0)) diags.push_back({"--length", "must be non-negative"});
    if (!(p.n_max > 0.0)) diags.push_back({"--nmax", "must be positive"});
  }
  if (spec.command == "table2") {
    fs::path table = p.params.link_table;
    if (table.is_relative()) table = p.config_path.parent_path() / table;
    try {
      p.link_rows = config::load_link_table(table);
    } catch (const Error& e) {
      diags.push_back({table.string(), e.what()});
    }
  }
  return p;
}

// ---------------------------------------------------------------- output

json number_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string stamp_json(json doc) {
  doc["version"] = kVersion;
  return doc.dump(2) + "\n";
}

void emit(const std::string& path, std::ostream& fallback, const std::string& text) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

struct Csv {
  std::ostringstream s;
  explicit Csv(const std::vector<std::string>& header) {
    s << "# " << kVersion << "\n" << join_row(header) << "\n";
  }
  static std::string join_row(const std::vector<std::string>& cells) {
    std::string r;
    for (std::size_t i = 0; i < cells.size(); ++i) r += (i ? "," : "") + cells[i];
    return r;
  }
  void row(const std::vector<std::string>& cells) { s << join_row(cells) << "\n"; }
};

std::string num(double v) { return units::format_double(v); }

budget::OperatingInputs operating_inputs(const config::Parameters& p) {
  budget::OperatingInputs in = budget::saturated_inputs(angular(p.f_mw), angular(p.f_mm),
                                                        p.inductance, p.istar);
  in.kappa_mw = angular(p.kappa_mw);
  in.kappa_mm = angular(p.kappa_mm);
  in.F = p.F;
  in.eta = p.eta;
  in.q_pump_int = p.q_pump_int;
  in.q_mw_int = p.q_mw_int;
  in.q_mm_int = p.q_mm_int;
  return in;
}

// ---------------------------------------------------------------- commands

void cmd_quantize(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto c = circuit::build_circuit(p.netlist);
  const auto modes = circuit::normal_modes(c);
  json doc;
  doc["nodes"] = p.netlist.node_count;
  doc["modes"] = io::modes_to_json(modes);
  if (p.netlist.nonlinear) {
    const auto& nl = *p.netlist.nonlinear;
    json e;
    e["i"] = nl.a;
    e["j"] = nl.b;
    e["effective_inductance_H"] = number_or_inf(circuit::effective_inductance(c, nl.a, nl.b));
    try {
      e["sum_rule_residual"] = circuit::sum_rule_residual(c, modes, nl.a, nl.b);
    } catch (const Error& err) {
      e["sum_rule_residual"] = std::string(to_string(err.code()));
    }
    doc["nonlinear"] = e;
  }
  emit(spec.out, out, stamp_json(doc));
}

void cmd_synth(const RunSpec& spec, const Prepared& p, std::ostream& out, std::ostream& err) {
  const auto design = synthesis::optimal_converter(angular(p.params.f_mw), angular(p.params.f_mm),
                                                   p.params.inductance, p.params.istar,
                                                   synthesis::parse_topology(p.params.topology));
  for (const auto& w : design.realization.warnings) err << "warning: " << w << "\n";
  emit(spec.out, out, stamp_json(io::design_to_json(design)));
  if (const auto it = spec.options.find("netlist"); it != spec.options.end()) {
    emit(it->second, out, io::netlist_to_json(design.realization.netlist).dump(2) + "\n");
  }
}

void cmd_simulate(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto& s = p.sim;
  const double dt = s.dt > 0.0 ? s.dt : converter::max_time_step(s.conv);
  const auto samples = static_cast<std::size_t>(std::floor(s.duration / dt)) + 1;
  const auto input =
      converter::WavePacket::make_pulse(s.shape, s.port, s.center, s.width, 0.0, dt, samples);
  const auto r = converter::simulate_single_photon(s.conv, input);

  Csv csv({"t_s", "re_u_a", "im_u_a", "re_u_b", "im_u_b", "re_alpha_out", "im_alpha_out",
           "re_beta_out", "im_beta_out"});
  for (std::size_t n = 0; n < samples; ++n) {
    csv.row({num(input.time(n)), num(r.u_a[n].real()), num(r.u_a[n].imag()), num(r.u_b[n].real()),
             num(r.u_b[n].imag()), num(r.output.alpha[n].real()), num(r.output.alpha[n].imag()),
             num(r.output.beta[n].real()), num(r.output.beta[n].imag())});
  }
  json summary;
  summary["samples"] = samples;
  summary["dt_s"] = dt;
  summary["cooperativity"] = s.conv.cooperativity();
  summary["bandwidth_Hz"] = hertz(converter::conversion_bandwidth(s.conv.kappa_a, s.conv.kappa_b));
  summary["output_energy_a"] = r.output.energy_a();
  summary["output_energy_b"] = r.output.energy_b();
  summary["conversion_probability"] = s.port == converter::WavePacket::Port::A
                                          ? r.output.energy_b()
                                          : r.output.energy_a();
  summary["lost"] = r.lost;
  summary["final_mode_norm"] = r.final_mode_norm;
  summary["norm_residual"] = r.norm_residual;

  if (spec.out.empty()) {
    out << csv.s.str();
    if (const auto it = spec.options.find("summary"); it != spec.options.end()) {
      emit(it->second, out, stamp_json(summary));
    }
  } else {
    emit(spec.out, out, csv.s.str());
    const auto it = spec.options.find("summary");
    emit(it == spec.options.end() ? std::string() : it->second, out, stamp_json(summary));
  }
}

void cmd_noise(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto point = budget::evaluate_operating_point(operating_inputs(p.params));
  const auto& c = point.inputs.couplings;

  // Oracle at a tractable photon number with the same n_p chi_c / kappa_p.
  const double n = p.params.kerr_photons;
  const double chi = point.kerr_shift / n;
  const double drive = noise::drive_for_photons(n, point.delta, point.kappa_p);
  const auto oracle = noise::kerr_steady_state_oracle(drive, chi, point.delta, point.kappa_p);

  json doc;
  doc["inputs"] = {{"n_p", point.n_p},
                   {"kappa_p_Hz", hertz(point.kappa_p)},
                   {"delta_Hz", hertz(point.delta)},
                   {"chi_c_Hz", hertz(c.chi_c)},
                   {"chi_ac_Hz", hertz(c.chi_ac)},
                   {"chi_bc_Hz", hertz(c.chi_bc)},
                   {"g0_Hz", hertz(c.g0)},
                   {"kappa_mw_Hz", hertz(point.inputs.kappa_mw)},
                   {"kappa_mm_Hz", hertz(point.inputs.kappa_mm)},
                   {"f_mw_Hz", hertz(point.inputs.omega_mw)}};
  doc["dephasing"] = point.dephasing;
  doc["heating"] = {{"occupation", point.heating_occupation},
                    {"purity_loss", point.heating_loss},
                    {"rwa_violation", point.rwa_violation}};
  doc["kerr_overlap_formula"] = point.kerr_overlap;
  doc["kerr_overlap_oracle"] = oracle.max_overlap;
  doc["oracle"] = {{"photons", n}, {"chi_Hz", hertz(chi)}, {"kappa_Hz", hertz(point.kappa_p)}};
  doc["truncation_dim"] = oracle.truncation;
  emit(spec.out, out, stamp_json(doc));
}

std::string flags_of(const budget::SweepRecord& r) {
  std::string f;
  if (r.rwa_violation) f = "rwa_violation";
  if (r.overdamped_mw) f += std::string(f.empty() ? "" : "+") + "overdamped_mw";
  return f.empty() ? "none" : f;
}

budget::SweepGrid grid_of(const config::Parameters& p) {
  budget::SweepGrid g;
  g.kappa_mw_min = angular(p.sweep_mw_min);
  g.kappa_mw_max = angular(p.sweep_mw_max);
  g.kappa_mw_points = p.sweep_mw_points;
  g.kappa_mm_min = angular(p.sweep_mm_min);
  g.kappa_mm_max = angular(p.sweep_mm_max);
  g.kappa_mm_points = p.sweep_mm_points;
  return g;
}

void cmd_sweep(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto base = operating_inputs(p.params);
  const auto grid = grid_of(p.params);
  const auto records = budget::sweep_operating_space(base, grid, spec.jobs);
  Csv csv({"kappa_mw_Hz", "kappa_mm_Hz", "E_qbit_J", "regime", "T_max", "T_sum", "dephasing",
           "heating", "flags"});
  for (const auto& r : records) {
    csv.row({num(hertz(r.kappa_mw)), num(hertz(r.kappa_mm)), num(r.energy),
             std::to_string(static_cast<int>(r.regime)), num(r.t_max), num(r.t_sum),
             num(r.dephasing), num(r.heating), flags_of(r)});
  }
  emit(spec.out, out, csv.s.str());
  if (const auto it = spec.options.find("boundary"); it != spec.options.end()) {
    Csv b({"kappa_mw_Hz", "kappa_mm_Hz"});
    for (const auto& pt : budget::regime_boundary(base, grid)) {
      b.row({num(hertz(pt.kappa_mw)), num(hertz(pt.kappa_mm))});
    }
    emit(it->second, out, b.s.str());
  }
}

void cmd_table1(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto pt = budget::evaluate_operating_point(operating_inputs(p.params));
  auto entry = [](double value, const char* unit, double reference) {
    return json{{"value", value}, {"unit", unit}, {"reference", reference}};
  };
  json doc;
  doc["inputs"] = {{"f_mw_Hz", hertz(pt.inputs.omega_mw)},
                   {"f_mm_Hz", hertz(pt.inputs.omega_mm)},
                   {"f_pump_Hz", hertz(pt.omega_p)},
                   {"kappa_mw_Hz", hertz(pt.inputs.kappa_mw)},
                   {"kappa_mm_Hz", hertz(pt.inputs.kappa_mm)},
                   {"F", pt.inputs.F},
                   {"eta", pt.inputs.eta},
                   {"g0_Hz", hertz(pt.inputs.couplings.g0)}};
  json d;
  d["bandwidth"] = entry(hertz(pt.bandwidth), "Hz", 20e6);
  d["pump_linewidth"] = entry(hertz(pt.kappa_p), "Hz", 4.5e9);
  d["pump_photons"] = entry(pt.n_p, "", 420);
  d["coupling_g0_np"] = entry(hertz(pt.g), "Hz", 70e6);
  d["kerr_shift_np_chi_c"] = entry(hertz(pt.kerr_shift), "Hz", -450e6);
  d["heating_power"] = entry(pt.heating.total, "W", 100e-12);
  d["heating_power_mode"] = entry(pt.heating.in_mode, "W", 37e-12);
  d["heating_power_line"] = entry(pt.heating.in_line, "W", 63e-12);
  d["energy_per_qubit"] = entry(pt.energy.joules, "J", 0.8e-18);
  d["efficiency_max_rule"] = entry(pt.efficiency.max_rule, "", 0.843);
  d["efficiency_sum_rule"] = entry(pt.efficiency.sum_rule, "", 0.843);
  d["dephasing"] = entry(pt.dephasing, "", 0.0020);
  d["heating"] = entry(pt.heating_loss, "", 0.0051);
  d["linearity_ratio_r"] = entry(pt.r, "", 10);
  doc["derived"] = d;
  doc["regime"] = static_cast<int>(pt.energy.regime);
  doc["kerr_overlap"] = pt.kerr_overlap;
  emit(spec.out, out, stamp_json(doc));
}

void cmd_table2(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  Csv csv({"cell", "band", "frequency_Hz", "temperature_K", "atten_dB_per_m", "atten_bound",
           "nbar", "l001_m", "l01_m", "reference_nbar", "reference_l001_m", "reference_l01_m"});
  for (const auto& row : p.link_rows) {
    csv.row({row.name, row.band, num(hertz(row.model.omega)), num(row.model.temperature),
             num(row.model.atten_db_per_m), row.atten_bound.empty() ? "estimate" : row.atten_bound,
             num(link::thermal_occupation(row.model.omega, row.model.temperature)),
             num(link::threshold_length(row.model, 0.01)),
             num(link::threshold_length(row.model, 0.1)), row.reference_occupation,
             row.reference_l001, row.reference_l01});
  }
  emit(spec.out, out, csv.s.str());
}

void cmd_linkbudget(const RunSpec& spec, const Prepared& p, std::ostream& out) {
  const auto noise = link::link_noise(p.link, p.length);
  json doc;
  doc["inputs"] = {{"frequency_Hz", hertz(p.link.omega)},
                   {"temperature_K", p.link.temperature},
                   {"atten_dB_per_m", p.link.atten_db_per_m},
                   {"length_m", p.length},
                   {"n_max", p.n_max}};
  doc["nbar"] = link::thermal_occupation(p.link.omega, p.link.temperature);
  doc["transmittance"] = noise.transmittance;
  doc["added_photons"] = noise.added_photons;
  doc["threshold_length_m"] = number_or_inf(link::threshold_length(p.link, p.n_max));
  doc["l001_m"] = number_or_inf(link::threshold_length(p.link, 0.01));
  doc["l01_m"] = number_or_inf(link::threshold_length(p.link, 0.1));
  emit(spec.out, out, stamp_json(doc));
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"quantize", "synth",  "simulate", "noise",
                                             "sweep",    "table1", "table2",   "linkbudget"};
  return c;
}

const std::vector<std::string>& command_options(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> table = {
      {"quantize", {}},
      {"synth", {"fmw", "fmm", "L", "Istar", "topology", "netlist"}},
      {"simulate", {"summary"}},
      {"noise", {}},
      {"sweep", {"grid", "boundary"}},
      {"table1", {}},
      {"table2", {}},
      {"linkbudget", {"freq", "temp", "atten", "length", "nmax"}},
  };
  static const std::vector<std::string> none;
  const auto it = table.find(command);
  return it == table.end() ? none : it->second;
}

std::vector<Diagnostic> validate(const RunSpec& spec) {
  std::vector<Diagnostic> diags;
  prepare(spec, diags);
  return diags;
}

int run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  std::vector<Diagnostic> diags;
  Prepared p;
  try {
    p = prepare(spec, diags);
  } catch (const std::exception& e) {
    diags.push_back({"", e.what()});
  }
  if (!diags.empty()) {
    for (const auto& d : diags) err << "error: " << config::format(d) << "\n";
    return kExitValidation;
  }
  try {
    if (spec.command == "quantize") cmd_quantize(spec, p, out);
    else if (spec.command == "synth") cmd_synth(spec, p, out, err);
    else if (spec.command == "simulate") cmd_simulate(spec, p, out);
    else if (spec.command == "noise") cmd_noise(spec, p, out);
    else if (spec.command == "sweep") cmd_sweep(spec, p, out);
    else if (spec.command == "table1") cmd_table1(spec, p, out);
    else if (spec.command == "table2") cmd_table2(spec, p, out);
    else if (spec.command == "linkbudget") cmd_linkbudget(spec, p, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_validation_error(e.code()) ? kExitValidation : kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace mmconv::cli
