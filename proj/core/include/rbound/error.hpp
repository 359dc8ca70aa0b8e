#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rbound {

enum class ErrorCode {
  InvalidArgument,
  BelowGrid,
  AboveGrid,
  EmptyRange,
  MissingVariate,
  NotUnimodal,
  DivergentMoment,
  SymmetryUnavailable,
  BadOrder,
  UnsupportedShape,
  InfeasibleBudget,
  TooManyCells,
  DegenerateFit,
  PreconditionFailed,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. The code identifies which
/// contract was violated; the message names the hypothesis.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rbound
