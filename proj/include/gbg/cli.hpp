#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gbg {

// Runs one command line (without the program name) and returns the process
// exit status: 0 ok, 1 verification reject, 2 bad input, 3 cap exceeded,
// 4 internal invariant failure. "--in -" reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gbg
