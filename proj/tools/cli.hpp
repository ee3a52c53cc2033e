#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbit::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInput = 1,
    kExitNumerical = 2,
    kExitBreach = 3,
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker threads: hardware concurrency, capped by ORBIT_ENTANGLE_THREADS.
int thread_budget();

}  // namespace orbit::cli
