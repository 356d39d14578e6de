#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sizedist {

// Command-line entry point shared by the binary and the tests. args holds
// everything after the program name. Returns the exit code: 0 on success,
// 1 on input or usage errors, 2 on numeric failures (a fit that does not
// converge without --allow-warn, a degenerate sample).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sizedist
