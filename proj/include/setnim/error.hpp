#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace setnim {

enum class ErrorCode {
  EmptySet,
  IndexOutOfRange,
  CoverageGap,
  UnknownId,
  BadParameters,
  FileFormatError,
  DimensionMismatch,
  NegativeResult,
  TooLarge,
  NonZeroVertex,
  EmptyResult,
  PreconditionViolated,
  NegativeHeight,
  IllegalReducedMove,
  BudgetExceeded,
  UnsupportedParameters,
  UnsupportedGame,
  NoCaseMatched,
  NotPointed,
  BadRequest,
  IllegalMove,
  Internal,
};

// Stable machine-readable name, used by the CLI and the HTTP service.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace setnim
