#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smpcert {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, warnings and errors to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace smpcert
