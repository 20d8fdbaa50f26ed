#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coopsynt {

enum ExitCode { kExitOk = 0, kExitError = 1, kExitUnrealizable = 2 };

/// Runs the command line tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coopsynt
