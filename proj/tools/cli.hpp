#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace elcr::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // a formula is false, a counterexample exists, ...
inline constexpr int kUsage = 2;   // bad flags or unreadable input

/// Runs one invocation. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace elcr::cli
