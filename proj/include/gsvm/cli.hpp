#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsvm::cli {

// Dispatches one command, writes the JSON report to --output or `out`, and
// returns the process exit code: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsvm::cli
