#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace negwit::cli {

// Runs one command; returns the process exit code (0 ok, 1 bad input, 2 numerical failure).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.12g
std::string format_number(double v);

}  // namespace negwit::cli
