#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dqm::cli {

enum ExitCode : int { Pass = 0, Violated = 1, Usage = 2 };

/// Runs one command line (without the program name), writing to the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dual number as "(st, in)" with 12 significant digits; negative zero prints as 0.
std::string format_dual(double st, double in);

}  // namespace dqm::cli
