#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infodyn::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;   // ran to completion, a checked property failed
inline constexpr int kExitUsage = 2;     // bad flags, unreadable or malformed input
inline constexpr int kExitDynamics = 3;  // orbit left its domain
inline constexpr int kExitDimension = 4;
inline constexpr int kExitProbability = 5;

// Runs the workbench with argv-style arguments (args[0] is the program name).
// Results go to `out` unless -o names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infodyn::cli
