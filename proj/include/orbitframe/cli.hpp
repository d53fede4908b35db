#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitframe {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;  // only with --strict

/// Runs one command line (args excludes the program name). Reports go to
/// `out` or the --out file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitframe
