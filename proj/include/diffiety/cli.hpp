#pragma once
/* Command-line front end, separated from main() so tests can drive it with
 * captured streams.  Returns the process exit code: 0 success, 1 computation
 * or verification failure, 2 usage error. */

#include <ostream>
#include <string>
#include <vector>

namespace diffiety {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace diffiety
