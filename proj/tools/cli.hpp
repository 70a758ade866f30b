#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cogniview::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kEquivalenceFailure = 2, kUsage = 3 };

/// Runs one command line (`args[0]` is the subcommand, not the program
/// name). Diagnostics go to `err` as `error: <kind>: <detail> at <file>:<line>:<col>`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cogniview::cli
