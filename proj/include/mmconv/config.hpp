#pragma once

// Physical defaults read from a flat key = value file, with command-line
// overrides, and the link table data file.

#include <filesystem>
#include <string>
#include <vector>

#include "mmconv/link.hpp"

namespace mmconv::config {

/// Frequencies and linewidths are ordinary frequencies (Hz), as written in
/// the configuration file; conversion to rad/s happens at the call site.
struct Parameters {
  double f_mw = 7e9;
  double f_mm = 300e9;
  double inductance = 1e-9;
  double istar = 0.05e-3;
  double kappa_mw = 10e6;
  double kappa_mm = 2e9;
  double F = 100.0;
  double eta = 0.9;
  double q_pump_int = 1000.0;
  double q_mw_int = 1e5;
  double q_mm_int = 1000.0;
  std::string topology = "cauer";
  double sweep_mw_min = 0.1e6;
  double sweep_mw_max = 10e9;
  int sweep_mw_points = 60;
  double sweep_mm_min = 1e6;
  double sweep_mm_max = 300e9;
  int sweep_mm_points = 60;
  double kerr_photons = 8.0;
  std::string link_table = "table2_links.conf";

  /// Sets one key from its textual value. Throws ParseError for an unknown
  /// key (listing the valid ones) or a malformed value.
  void set(const std::string& key, const std::string& value);

  /// Physical-range problems, one message per offending key.
  std::vector<std::string> range_problems() const;
};

/// Every recognised key, in file order.
const std::vector<std::string>& parameter_keys();

struct Diagnostic {
  std::string where;  // "file:line", "--set", "capacitors[2]" ...
  std::string message;
};

std::string format(const Diagnostic& d);

/// Loads `path` onto `params`. Problems are appended to `diagnostics` with the
/// line number of the offending entry; loading continues past bad entries.
void load_parameters(const std::filesystem::path& path, Parameters& params,
                     std::vector<Diagnostic>& diagnostics);

/// Default configuration path: $MMCONV_CONFIG if set, otherwise the shipped
/// data/defaults.conf.
std::filesystem::path default_config_path();

/// Reads the link table; one section per table cell. Throws ParseError.
std::vector<link::LinkRow> load_link_table(const std::filesystem::path& path);

}  // namespace mmconv::config
