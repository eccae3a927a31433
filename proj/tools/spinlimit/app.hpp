#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spinlimit::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kCapacityError = 3,
  kDomainError = 4,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; CSV products go to files, or to `out` for "-".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinlimit::cli
