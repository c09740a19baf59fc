#ifndef CATONI_CLI_HPP
#define CATONI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace catoni {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,       // bad flag, value or input file
  kExitInfeasible = 3,  // a sample-size / confidence condition fails
  kExitDegenerate = 4,  // data too degenerate for the estimator
  kExitNumerical = 5    // a solver failed
};

/// Runs the tool on args (without the program name); CSV goes to out unless
/// --output is given, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catoni

#endif  // CATONI_CLI_HPP
