#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rbsect/first_last.hpp"

namespace rbsect {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // bad arguments, unreadable or invalid input
inline constexpr int kExitCheck = 2;  // an oracle check failed

/// One line per red curve: `id x y blue | x y blue`, `none` for a missing
/// side.
void print_first_last(std::ostream& out, const FirstLastResult& r);

/// Runs `rbsect <command> ...`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rbsect
