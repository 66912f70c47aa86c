#pragma once

#include <stdexcept>
#include <string>

namespace invkit {

/// Error categories surfaced to callers (and mapped to CLI exit codes).
enum class ErrorCode {
  DimensionMismatch,
  EmptyPolyhedron,
  UnboundedNonCone,
  OriginNotContained,
  OverlappingPieces,
  NotCovering,
  NoPieceContains,
  EmptyIntersectionEverywhere,
  ComplexityBudgetExceeded,
  NumericalFailure,
  InvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyPolyhedron: return "EmptyPolyhedron";
    case ErrorCode::UnboundedNonCone: return "UnboundedNonCone";
    case ErrorCode::OriginNotContained: return "OriginNotContained";
    case ErrorCode::OverlappingPieces: return "OverlappingPieces";
    case ErrorCode::NotCovering: return "NotCovering";
    case ErrorCode::NoPieceContains: return "NoPieceContains";
    case ErrorCode::EmptyIntersectionEverywhere: return "EmptyIntersectionEverywhere";
    case ErrorCode::ComplexityBudgetExceeded: return "ComplexityBudgetExceeded";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace invkit
