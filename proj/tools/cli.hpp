#pragma once

#include <iosfwd>

namespace warpbank::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalid = 2,
  kCoverage = 3,
  kLength = 4,
  kFingerprint = 5,
  kNotPainless = 6,
};

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace warpbank::cli
