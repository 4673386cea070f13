#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equitree::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,         // tree or expression rejected
  kNoTheorem = 2,       // no decomposition formula applies
  kInvariant = 3,       // internal identity failed or an obstruction survived
  kUsage = 64,
};

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equitree::cli
