#pragma once

#include <stdexcept>
#include <string>

namespace vexp {

enum class ErrorCode {
  Config,
  Io,
  GridMismatch,
  SpecOutOfRange,
  NotInClassP,
  BadBounds,
  NonFinite,
  BracketFailure,
  QPlusInfinite,
  TooLargeForBrute,
  NotNormable,
  GridTooSmall,
  Internal,
};

// Single exception type carrying a stable error code; the code is what the
// C API and the CLI exit statuses are derived from.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SpecOutOfRange: return "SpecOutOfRange";
    case ErrorCode::NotInClassP: return "NotInClassP";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::QPlusInfinite: return "QPlusInfinite";
    case ErrorCode::TooLargeForBrute: return "TooLargeForBrute";
    case ErrorCode::NotNormable: return "NotNormable";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace vexp
