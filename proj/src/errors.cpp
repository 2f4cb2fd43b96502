#include "warpbank/errors.hpp"

namespace warpbank {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::EmptyBank: return "EmptyBank";
    case ErrorCode::CoverageError: return "CoverageError";
    case ErrorCode::NotPainless: return "NotPainless";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

}  // namespace warpbank
