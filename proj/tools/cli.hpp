#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qharm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name.
/// Subcommands: coeffs, bounds, verify, trace, area, attain, scan.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qharm::cli
