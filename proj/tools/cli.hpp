#pragma once

#include <iosfwd>

namespace chebroot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point for the `chebroot` tool. Subcommands: roots, sweep, interp, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chebroot::cli
