#pragma once

#include <iosfwd>

namespace plateopt::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kRunFailure = 1, kUsageError = 2 };

/// Entry point behind the `plateopt` binary; all output goes to the given streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plateopt::cli
