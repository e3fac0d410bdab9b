#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace depcov::cli {

/// Exit codes shared by every verb.
enum ExitCode : int { accept = 0, usage = 1, data = 2, reject = 3 };

/// Identifier stamped into every report; bump when the layout changes.
inline constexpr const char* kReportSchema = "depcov/run-report/v1";

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace depcov::cli
