#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modext::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. The one-line summary goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modext::cli
