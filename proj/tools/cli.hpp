#pragma once

#include <ostream>

namespace faircut::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,      // argument or parse error
  kExhausted = 2,  // solver budget ran out
  kNotFair = 3,
};

// Entry point shared by the faircut binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace faircut::cli
