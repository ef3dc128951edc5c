#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFindings = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitNoInput = 66;

/// Margins below −kMarginTolerance are findings.
inline constexpr double kMarginTolerance = 1e-8;

/// Runs one command line; args[0] is the program name. The JSON report goes to `out`
/// (or to --output), diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfa::cli
