#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qbrst::cli {

/// Runs one command line (without the program name). Returns the exit code:
/// 0 when every check passes, 1 on a failed check or step limit, 2 on bad input.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qbrst::cli
