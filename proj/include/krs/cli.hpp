#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krs::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kNotTangent = 2,
    kNumericFailure = 3,  ///< NotConverged, SigmaZero, BudgetExceeded
    kCheckFailed = 4,
};

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krs::cli
