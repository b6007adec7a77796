#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbir::cli {

// Runs one command line (args[0] is the program name). Data goes to `out`,
// diagnostics to `err`; returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cbir::cli
