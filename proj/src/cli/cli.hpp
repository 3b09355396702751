#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace focus::cli {

/// Exit codes of every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailed = 1,     // condition unsatisfied, verification failed, precondition not met
    kParseError = 2, // malformed input file or arguments
    kCapExceeded = 3,
};

/// Runs the command line `argv` (argv[0] is the program name) writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace focus::cli
