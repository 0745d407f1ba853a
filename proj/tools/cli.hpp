#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lowrank::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // property check failed, iteration or backtracking budget hit
inline constexpr int kExitUsage = 2;   // bad flags, config, or input files

/// Entry point behind `lowrank-retract <command> --config <path> [--out <dir>] [--seed <u64>]`.
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lowrank::cli
