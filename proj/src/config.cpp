#include "mmconv/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "mmconv/constants.hpp"
#include "mmconv/error.hpp"
#include "mmconv/units.hpp"

namespace mmconv::config {
namespace {

struct KeySpec {
  std::string name;
  std::function<void(Parameters&, const std::string&)> assign;
};

auto quantity(double Parameters::*field, std::string unit) {
  return [field, unit](Parameters& p, const std::string& v) {
    p.*field = units::parse_quantity(v, unit);
  };
}

auto integer(int Parameters::*field) {
  return [field](Parameters& p, const std::string& v) {
    const double x = units::parse_quantity(v, "");
    if (x != static_cast<int>(x)) {
      throw Error(ErrorCode::ParseError, "'" + v + "' is not an integer");
    }
    p.*field = static_cast<int>(x);
  };
}

auto text(std::string Parameters::*field) {
  return [field](Parameters& p, const std::string& v) { p.*field = v; };
}

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"f_mw", quantity(&Parameters::f_mw, "Hz")},
      {"f_mm", quantity(&Parameters::f_mm, "Hz")},
      {"L", quantity(&Parameters::inductance, "H")},
      {"Istar", quantity(&Parameters::istar, "A")},
      {"kappa_mw", quantity(&Parameters::kappa_mw, "Hz")},
      {"kappa_mm", quantity(&Parameters::kappa_mm, "Hz")},
      {"F", quantity(&Parameters::F, "")},
      {"eta", quantity(&Parameters::eta, "")},
      {"Q_pump_int", quantity(&Parameters::q_pump_int, "")},
      {"Q_mw_int", quantity(&Parameters::q_mw_int, "")},
      {"Q_mm_int", quantity(&Parameters::q_mm_int, "")},
      {"topology", text(&Parameters::topology)},
      {"sweep_mw_min", quantity(&Parameters::sweep_mw_min, "Hz")},
      {"sweep_mw_max", quantity(&Parameters::sweep_mw_max, "Hz")},
      {"sweep_mw_points", integer(&Parameters::sweep_mw_points)},
      {"sweep_mm_min", quantity(&Parameters::sweep_mm_min, "Hz")},
      {"sweep_mm_max", quantity(&Parameters::sweep_mm_max, "Hz")},
      {"sweep_mm_points", integer(&Parameters::sweep_mm_points)},
      {"kerr_photons", quantity(&Parameters::kerr_photons, "")},
      {"link_table", text(&Parameters::link_table)},
  };
  return table;
}

std::string join_keys() {
  std::string out;
  for (const auto& k : parameter_keys()) out += (out.empty() ? "" : ", ") + k;
  return out;
}

// Line of the first "key =" entry, for diagnostics; 0 when not found.
int line_of(const std::filesystem::path& path, const std::string& key) {
  std::ifstream in(path);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line.compare(start, key.size(), key) != 0) continue;
    const auto rest = line.find_first_not_of(" \t", start + key.size());
    if (rest != std::string::npos && line[rest] == '=') return n;
  }
  return 0;
}

}  // namespace

const std::vector<std::string>& parameter_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& spec : key_table()) k.push_back(spec.name);
    return k;
  }();
  return keys;
}

void Parameters::set(const std::string& key, const std::string& value) {
  for (const auto& spec : key_table()) {
    if (spec.name == key) {
      spec.assign(*this, value);
      return;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown key '" + key + "'; valid keys: " + join_keys());
}

std::vector<std::string> Parameters::range_problems() const {
  std::vector<std::string> out;
  auto positive = [&](const char* name, double v) {
    if (!(v > 0.0)) out.push_back(std::string(name) + " must be positive");
  };
  positive("f_mw", f_mw);
  positive("f_mm", f_mm);
  if (f_mw > 0.0 && !(f_mm > f_mw)) out.push_back("f_mm must exceed f_mw");
  positive("L", inductance);
  positive("Istar", istar);
  positive("kappa_mw", kappa_mw);
  positive("kappa_mm", kappa_mm);
  positive("F", F);
  if (!(eta > 0.0 && eta <= 1.0)) out.push_back("eta must lie in (0, 1]");
  positive("Q_pump_int", q_pump_int);
  positive("Q_mw_int", q_mw_int);
  positive("Q_mm_int", q_mm_int);
  if (topology != "foster" && topology != "cauer") out.push_back("topology must be foster or cauer");
  positive("sweep_mw_min", sweep_mw_min);
  positive("sweep_mm_min", sweep_mm_min);
  if (!(sweep_mw_max >= sweep_mw_min)) out.push_back("sweep_mw_max must be >= sweep_mw_min");
  if (!(sweep_mm_max >= sweep_mm_min)) out.push_back("sweep_mm_max must be >= sweep_mm_min");
  if (sweep_mw_points < 1) out.push_back("sweep_mw_points must be >= 1");
  if (sweep_mm_points < 1) out.push_back("sweep_mm_points must be >= 1");
  positive("kerr_photons", kerr_photons);
  return out;
}

std::string format(const Diagnostic& d) {
  return d.where.empty() ? d.message : d.where + ": " + d.message;
}

void load_parameters(const std::filesystem::path& path, Parameters& params,
                     std::vector<Diagnostic>& diagnostics) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    diagnostics.push_back({path.string() + ":" + std::to_string(e.line()), e.message()});
    return;
  }
  for (const auto& [key, node] : tree) {
    const std::string where = path.string() + ":" + std::to_string(line_of(path, key));
    if (!node.empty()) {
      diagnostics.push_back({path.string(), "sections are not allowed in a parameter file ('" +
                                                key + "')"});
      continue;
    }
    try {
      params.set(key, node.data());
    } catch (const Error& e) {
      diagnostics.push_back({where, e.what()});
    }
  }
}

std::filesystem::path default_config_path() {
  if (const char* env = std::getenv("MMCONV_CONFIG"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(MMCONV_DATA_DIR) / "defaults.conf";
}

std::vector<link::LinkRow> load_link_table(const std::filesystem::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError,
                path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  std::vector<link::LinkRow> rows;
  for (const auto& [name, section] : tree) {
    auto required = [&, &name = name, &section = section](const char* key) {
      const auto v = section.get_optional<std::string>(key);
      if (!v) {
        throw Error(ErrorCode::ParseError,
                    path.string() + ": section [" + name + "] lacks '" + key + "'");
      }
      return *v;
    };
    link::LinkRow row;
    row.name = name;
    row.band = required("band");
    row.model.omega = angular(units::parse_quantity(required("frequency"), "Hz"));
    row.model.temperature = units::parse_quantity(required("temperature"), "K");
    row.model.atten_db_per_m = units::parse_quantity(required("attenuation"), "dB/m");
    row.atten_bound = section.get<std::string>("attenuation_bound", "");
    if (!row.atten_bound.empty() && row.atten_bound != "lower") {
      throw Error(ErrorCode::ParseError,
                  path.string() + ": [" + name + "] attenuation_bound must be empty or 'lower'");
    }
    row.reference_occupation = section.get<std::string>("reference_nbar", "");
    row.reference_l001 = section.get<std::string>("reference_l001", "");
    row.reference_l01 = section.get<std::string>("reference_l01", "");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mmconv::config
