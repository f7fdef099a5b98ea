#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncortho::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 on a validation or
/// numerical failure, 2 on usage errors and unreadable or malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncortho::cli
