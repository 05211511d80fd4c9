#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conifold::cli {

// Exit codes
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsageError = 2;

// Runs one command line (args excludes the program name). The JSON report goes
// to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conifold::cli
