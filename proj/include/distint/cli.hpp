// Command-line dispatcher. JSON results go to `out`, diagnostics to `err`.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace distint {

enum ExitCode : int { kExitOk = 0, kExitComputation = 1, kExitUsage = 2 };

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace distint
