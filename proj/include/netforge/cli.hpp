#pragma once

#include <iosfwd>

namespace netforge {

/// Entry point of the command-line tool. Exit codes: 0 success, 2 bad input
/// or config, 3 no stable state within the step limit, 4 infeasible region.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace netforge
