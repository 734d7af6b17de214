#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lacunary::cli {

/// Runs one command (args excludes the program name). Returns the exit code:
/// 0 for a definite verdict, 2 for indeterminate, 1 for errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lacunary::cli
