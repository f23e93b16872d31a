#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ren::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `ren` binary. Subcommands: simulate, transient, parity,
// classify, mix, rules, compile. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ren::cli
