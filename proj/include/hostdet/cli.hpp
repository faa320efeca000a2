#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hostdet {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDataError = 2,  // unreadable or invalid dataset / model file
  kExitSpecError = 3,  // invalid pipeline configuration or usage
  kExitTaskMismatch = 4,
};

/// Runs `hostdet <subcommand> ...`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hostdet
