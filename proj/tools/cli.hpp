#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypervol::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_domain = 1,
  exit_convergence = 2,
  exit_violation = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 17 significant digits; infinities as "inf".
std::string format_number(double v);

}  // namespace hypervol::cli
