#pragma once

#include <stdexcept>
#include <string>

namespace rgvfm {

enum class ErrorCode {
  ZeroVector,
  DimensionMismatch,
  AntipodalPoints,
  BaseMismatch,
  UnsupportedManifold,
  EmptyInput,
  NoConvergence,
  NonFiniteLoss,
  TimeSingularity,
  NonFiniteState,
  EmptySamples,
  MissingInputs,
  InvalidConfig,
  InvalidArgument,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::UnsupportedManifold: return "UnsupportedManifold";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::TimeSingularity: return "TimeSingularity";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::MissingInputs: return "MissingInputs";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// All library failures carry a machine-parsable category plus a
/// human-readable message; the CLI prints "error: <category>: <message>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rgvfm
