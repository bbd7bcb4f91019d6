#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mrfmoves {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitParseError = 2,
  kExitBadFlags = 3,
  kExitInconsistent = 4,
};

/// Runs the tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace mrfmoves
