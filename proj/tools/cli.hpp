#pragma once

#include <iosfwd>

namespace mdim {

// Exit codes of the mdim command line tool.
enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitError = 2, kExitBudget = 3 };

// Runs `mdim <subcommand> ...`; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mdim
