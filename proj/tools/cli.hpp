#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fcb::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kDomainError = 2, kToleranceError = 3 };

/// Runs the command line `args` (without the program name). Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcb::cli
