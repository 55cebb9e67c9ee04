#pragma once

#include <ostream>

namespace tiltlab::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kValidation = 3,
  kBound = 4,
};

// Parses argv, runs one verb and writes its report. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tiltlab::cli
