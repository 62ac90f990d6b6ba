#pragma once

#include <iosfwd>

namespace swirl {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitBlowUp = 3,
    kExitIo = 4,
    kExitVerify = 5,
};

// Command-line entry point: run, diagnose, verify, export.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace swirl
