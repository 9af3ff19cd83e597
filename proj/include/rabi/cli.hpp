#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rabi::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs the command line `args` (program name excluded). Output that is not
/// redirected with --out goes to `out`; usage, errors and warnings go to `err`.
///
/// Returns 0 on success, 1 when a numerical contract fails, 2 on argument errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rabi::cli
