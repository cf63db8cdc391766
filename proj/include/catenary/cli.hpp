#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catenary::cli {

enum ExitCode : int { ok = 0, validation_failed = 1, config_error = 2 };

// Runs one command line (args[0] is the program name). Results go to out
// (or to --out files), one-line diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catenary::cli
