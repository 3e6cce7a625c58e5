#include "smimc/errors.hpp"

namespace smimc {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::RankDeficientL: return "RankDeficientL";
    case ErrorCode::EvalAtPole: return "EvalAtPole";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::PointMismatch: return "PointMismatch";
    case ErrorCode::NegativeShiftOnNonzeroEntry:
      return "NegativeShiftOnNonzeroEntry";
    case ErrorCode::InsufficientSeriesOrder: return "InsufficientSeriesOrder";
    case ErrorCode::MaxOrderExceeded: return "MaxOrderExceeded";
    case ErrorCode::RankDecrease: return "RankDecrease";
    case ErrorCode::IncompleteProfile: return "IncompleteProfile";
    case ErrorCode::NoZeroAtPoint: return "NoZeroAtPoint";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MismatchedShapes: return "MismatchedShapes";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
  }
  return "UnknownError";
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return 2;
    case ErrorCode::InsufficientSeriesOrder: return 3;
    case ErrorCode::MaxOrderExceeded: return 4;
    case ErrorCode::EvalAtPole: return 5;
    case ErrorCode::MismatchedShapes: return 6;
    case ErrorCode::DegenerateDraw: return 7;
    case ErrorCode::NonFiniteInput: return 8;
    case ErrorCode::DimensionMismatch: return 9;
    case ErrorCode::PointMismatch: return 10;
    case ErrorCode::RankDeficientL: return 11;
    case ErrorCode::NegativeShiftOnNonzeroEntry: return 12;
    case ErrorCode::RankDecrease: return 13;
    case ErrorCode::IncompleteProfile: return 14;
    case ErrorCode::NoZeroAtPoint: return 15;
  }
  return 1;
}

}  // namespace smimc
