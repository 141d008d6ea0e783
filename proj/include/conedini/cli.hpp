#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conedini {

/// Runs one CLI invocation. `args` excludes the program name. Returns 0 on
/// success, 1 on input errors or bad usage, 2 on contract violations.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conedini
