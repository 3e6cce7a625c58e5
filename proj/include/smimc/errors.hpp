#pragma once

#include <stdexcept>
#include <string>

namespace smimc {

/// Failure categories shared by the library and the CLI (each maps to a
/// distinct process exit code, see exit_code()).
enum class ErrorCode {
  NonFiniteInput,
  RankDeficientL,
  EvalAtPole,
  DimensionMismatch,
  PointMismatch,
  NegativeShiftOnNonzeroEntry,
  InsufficientSeriesOrder,
  MaxOrderExceeded,
  RankDecrease,
  IncompleteProfile,
  NoZeroAtPoint,
  ParseError,
  MismatchedShapes,
  DegenerateDraw,
};

const char* error_name(ErrorCode code) noexcept;

/// Stable CLI exit code for a failure category (0 is success, 1 is reserved
/// for unclassified errors).
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace smimc
