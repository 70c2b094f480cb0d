#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bessel_br::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. `args` excludes the program name.
///
/// Subcommands: constants, tail-check, kk-check, marginal-sweep, fdd-check,
/// br-sample, br-selftest. Human-readable output goes to `out`, diagnostics
/// and usage text to `err`; the report is written to --out when given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bessel_br::cli
