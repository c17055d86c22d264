#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tsboot::cli {

// Exit codes of the batch front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitModel = 4;
inline constexpr int kExitCheckFailed = 5;

inline constexpr int kFormatVersion = 1;

/// Runs one invocation; `args` excludes the program name. Records go to `out`
/// unless --output names a file; diagnostics go to `err` as single lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsboot::cli
