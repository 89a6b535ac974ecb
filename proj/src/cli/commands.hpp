#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypin::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitSolver = 3,
    kExitVerify = 4,
    kExitOptimizer = 5,
};

/// Entry point of the hypin tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypin::cli
