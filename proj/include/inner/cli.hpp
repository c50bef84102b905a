#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace inner {

/// Command-line entry point. args excludes the program name.
/// Exit codes: 0 success, 1 verification or runtime failure, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inner
