// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bcrelay::cli {

/// Seed used when neither --seed, a config file nor BCRELAY_SEED sets one.
inline constexpr unsigned long long kDefaultSeed = 7;

/// Runs one command line (without the program name). Returns the process
/// exit status: 0 success, 1 runtime failure or failed validation, 2 usage
/// error (CLI11 parse errors keep their own codes).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bcrelay::cli
