// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace conebessel::cli {

/// Exit codes: 0 success or pass, 1 verification failure, 2 usage or
/// invalid input, 3 domain error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Runs the command line (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conebessel::cli
