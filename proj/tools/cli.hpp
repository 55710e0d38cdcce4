#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ifsrep {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

/// Runs `ifsrep <args...>` (without the program name). Results go to `out`
/// unless an output file is configured; diagnostics go to `err`.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifsrep
