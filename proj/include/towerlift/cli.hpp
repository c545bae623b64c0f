#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace towerlift::cli {

enum ExitCode : int { Ok = 0, ParseError = 1, Failure = 2, BudgetExhausted = 3, VerifyFailed = 4 };

/// Runs one job. `args` excludes the program name. Reports go to --output or
/// `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace towerlift::cli
