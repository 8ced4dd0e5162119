#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace geomis {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitCheckFailed = 2;

/// Entry point of the `geomis` tool; `args` excludes the program name.
/// Subcommands: gen, run, oracle, lattice, experiment.
int cli_dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace geomis
