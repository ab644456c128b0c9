#pragma once

// Command dispatch shared by the mmconv executable and the tests.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mmconv/config.hpp"

namespace mmconv::cli {

inline constexpr const char* kVersion = "mmconv 1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

struct RunSpec {
  std::string command;  // quantize|synth|simulate|noise|sweep|table1|table2|linkbudget
  std::vector<std::string> inputs;
  std::string out;     // empty: standard output
  std::string config;  // empty: config::default_config_path()
  std::vector<std::string> overrides;  // "key=value"
  int jobs = 1;
  /// Command-specific flags without the leading dashes, e.g. {"freq", "300GHz"}.
  std::map<std::string, std::string> options;
};

const std::vector<std::string>& commands();

/// Flags accepted by `command` in RunSpec::options.
const std::vector<std::string>& command_options(const std::string& command);

/// Schema and physical-range checks. Empty when the spec can be run.
std::vector<config::Diagnostic> validate(const RunSpec& spec);

/// Runs the command, writing artifacts to spec.out (or `out`) and
/// diagnostics to `err`. Returns kExitOk, kExitValidation or kExitNumerical.
int run(const RunSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace mmconv::cli
