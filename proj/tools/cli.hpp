#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agum::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumeric = 3 };

/// args[0] is the program name. Output goes to `out` unless --output is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agum::cli
