#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbern::cli {

enum ExitCode : int {
  kOk = 0,
  kIdentityViolation = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` (unless --out is given) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbern::cli
