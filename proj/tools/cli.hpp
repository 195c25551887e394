#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcd::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPass = 0, kVerificationFail = 1, kUsage = 2, kInfeasible = 3 };

/// Runs the dcd command line; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcd::cli
