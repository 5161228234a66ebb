#pragma once

#include <iosfwd>

namespace fracbl::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kBadArguments = 2,
    kNumericalFailure = 3,
};

/// Parses argv and runs one subcommand; all output goes to out / err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracbl::cli
