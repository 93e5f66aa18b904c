#pragma once

// Command-line front end shared by the `lvdt` binary and its tests.

#include <ostream>

namespace lvdt {

enum ExitCode : int {
  kExitOk = 0,
  kExitAcceptanceFail = 1,
  kExitUsage = 2,
  kExitValidation = 3,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lvdt
