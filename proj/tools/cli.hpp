#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ontca::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 1,
  kVerification = 2,
  kBound = 3,
};

/// Runs one command line (args[0] is the program name). Everything meant for
/// the terminal goes to `out` and `err`; files go under --out.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace ontca::cli
