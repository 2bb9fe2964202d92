#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace buckling::cli {

// Exit codes of the command-line surface.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitUsage = 2,
    kExitSolver = 3,
    kExitNodal = 4,
    kExitIo = 5,
};

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buckling::cli
