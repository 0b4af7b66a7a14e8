#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace limset::cli {

// Dispatches one CLI invocation. Exit codes: 0 success, 2 validation or
// usage error, 3 verify-suite failure.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace limset::cli
