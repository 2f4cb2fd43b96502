#pragma once

#include <stdexcept>
#include <string>

namespace warpbank {

enum class ErrorCode {
  InvalidParameter,
  DomainError,
  DegenerateWindow,
  EmptyBank,
  CoverageError,
  NotPainless,
  LengthMismatch,
  FingerprintMismatch,
  FormatError,
  NoConvergence,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace warpbank
