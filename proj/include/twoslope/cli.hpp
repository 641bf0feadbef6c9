#pragma once

#include <iosfwd>

namespace twoslope {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCertification = 3;

/// Parses argv, runs one subcommand, writes results to `out` and diagnostics
/// to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twoslope
