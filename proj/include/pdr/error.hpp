#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pdr {

enum class ErrorCode {
  DegenerateTriangle,
  DegenerateSegment,
  DegenerateInput,
  DuplicateVertex,
  OutsideHull,
  NoFeaturePair,
  NoSuchSegment,
  OutOfRange,
  BelowFloor,
  RefinementStalled,
  NotSequentializable,
  PreprocessDiverged,
  ParseError,
  InvalidDomain,
  InvalidConfig,
  InvariantViolation,
  EmptyMesh,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::OutsideHull: return "OutsideHull";
    case ErrorCode::NoFeaturePair: return "NoFeaturePair";
    case ErrorCode::NoSuchSegment: return "NoSuchSegment";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BelowFloor: return "BelowFloor";
    case ErrorCode::RefinementStalled: return "RefinementStalled";
    case ErrorCode::NotSequentializable: return "NotSequentializable";
    case ErrorCode::PreprocessDiverged: return "PreprocessDiverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace pdr
