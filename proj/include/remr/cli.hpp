#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace remr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitScenario = 2;
inline constexpr int kExitGuard = 3;

/// Runs one command line (args[0] is the program name). Results go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace remr::cli
