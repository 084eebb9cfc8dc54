#pragma once

// The command-line surface: info, construct, verify, sweep, oracle, paths.
//
// Exit codes: 0 success or accepted, 1 verification or feasibility failure,
// 2 usage or parse error.

#include <iosfwd>
#include <string>
#include <vector>

namespace augcube {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name. Everything the command prints goes to
/// `out` or `err`; nothing touches the process streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace augcube
