#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ranklab::cli {

// Dispatches one command line (without argv[0]); returns the process exit
// code: 0 success, 2 precondition violation, 3 budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ranklab::cli
