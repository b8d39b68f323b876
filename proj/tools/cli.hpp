#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thy::cli {

/// Exit codes: 0 success or "yes", 1 "no", 2 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thy::cli
