#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace faultrank::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out` (or the --out file), diagnostics and errors to `err`.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace faultrank::cli
