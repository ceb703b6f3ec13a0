#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sievekit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCounterexample = 1,
  kExitInputError = 2,
};

/// Entry point behind the `sievekit` binary. `args` excludes the program
/// name. Reports go to `out`, errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sievekit::cli
