#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmconv {

enum class ErrorCode {
  InvalidArgument,
  InvalidNode,
  SingularCapacitance,
  EigenFailure,
  NearPole,
  ZeroFrequencyMode,
  InvalidFrequencies,
  NumericalBreakdown,
  GridTooCoarse,
  TruncationTooSmall,
  SingularSolve,
  ZeroCoupling,
  DenominatorCollapse,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// True for failures caused by bad input (as opposed to numerical breakdown).
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mmconv
