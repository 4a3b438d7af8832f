#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xstates::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kNotPreserving = 1,  // check: channel or generator breaks the X shape
  kInvalidInput = 2,
  kIoError = 3,
  kEvolveNotPreserving = 4,
  kStepRejected = 5,
};

// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xstates::cli
