#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace urysohn::cli {

/// Runs one command line (args[0] is the program name). Returns the exit
/// status: 0 success, 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urysohn::cli
