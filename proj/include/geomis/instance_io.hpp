#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "geomis/online.hpp"

namespace geomis {

// Line-oriented instance format, '#' starts a comment:
//
//   geomis-instance v1
//   dim <d> | dim -
//   ball <x1> ... <xd> <radius>
//   rect <l1> <u1> ... <ld> <ud>
//   vertex <id> <comma-separated earlier ids | ->
//
// Geometric lines derive adjacency on load; vertex lines carry it. Reals are
// written in shortest round-trip form, so save -> load -> save is byte-exact.

inline constexpr const char* kInstanceMagic = "geomis-instance v1";

/// Throws ValidationError("line N: ...") on malformed or inconsistent input.
ArrivalSequence parse_instance(std::istream& in);
ArrivalSequence load_instance(const std::filesystem::path& path);

/// `decisions`, when non-empty, are written as "# decision <id> accept|reject"
/// comments after each arrival (transcript form).
void write_instance(std::ostream& out, const ArrivalSequence& seq,
                    std::span<const Decision> decisions = {});
void save_instance(const ArrivalSequence& seq, const std::filesystem::path& path,
                   std::span<const Decision> decisions = {});

/// Shortest decimal that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace geomis
