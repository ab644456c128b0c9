#include "mmconv/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "mmconv/error.hpp"

namespace mmconv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidNode: return "InvalidNode";
    case ErrorCode::SingularCapacitance: return "SingularCapacitance";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::ZeroFrequencyMode: return "ZeroFrequencyMode";
    case ErrorCode::InvalidFrequencies: return "InvalidFrequencies";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::SingularSolve: return "SingularSolve";
    case ErrorCode::ZeroCoupling: return "ZeroCoupling";
    case ErrorCode::DenominatorCollapse: return "DenominatorCollapse";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidNode:
    case ErrorCode::InvalidFrequencies:
    case ErrorCode::ParseError:
    case ErrorCode::SingularCapacitance:
    case ErrorCode::ZeroCoupling:
      return true;
    default:
      return false;
  }
}

namespace units {
namespace {

constexpr std::array<std::pair<std::string_view, double>, 11> kPrefixes{{
    {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xC2\xB5", 1e-6},
    {"m", 1e-3}, {"k", 1e3}, {"M", 1e6}, {"G", 1e9}, {"T", 1e12}, {"", 1.0},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view text, std::string_view unit, std::string_view why) {
  throw Error(ErrorCode::ParseError, "cannot parse quantity '" + std::string(text) +
                                         "' as " + std::string(unit) + ": " + std::string(why));
}

}  // namespace

double parse_quantity(std::string_view text, std::string_view unit) {
  std::string_view s = trim(text);
  if (s.empty()) fail(text, unit, "empty");

  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  // from_chars rejects a leading '+'.
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) fail(text, unit, "no leading number");
  if (!std::isfinite(value)) fail(text, unit, "not finite");

  std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (suffix.empty()) return value;

  if (suffix.size() < unit.size() || suffix.substr(suffix.size() - unit.size()) != unit) {
    fail(text, unit, "unit suffix must be '" + std::string(unit) + "'");
  }
  std::string_view prefix = suffix.substr(0, suffix.size() - unit.size());
  for (const auto& [symbol, scale] : kPrefixes) {
    if (prefix == symbol) return value * scale;
  }
  fail(text, unit, "unknown SI prefix '" + std::string(prefix) + "'");
}

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

}  // namespace units
}  // namespace mmconv
