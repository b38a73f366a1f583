#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace p1split::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kSingular = 3,
  kVerificationFailed = 4,
  kOracleDisagrees = 5,
  kUnsupported = 6,
};

inline constexpr const char* kVersion = "0.1.0";

/// Runs the command line `p1split <args...>`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace p1split::cli
