#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghost::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kComputation = 3 };

/// Runs one invocation; `args` excludes the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ghost::cli
