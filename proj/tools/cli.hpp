#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace govinf::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kRuntime = 2,
    kAuditMismatch = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace govinf::cli
