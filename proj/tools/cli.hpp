#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypbarrier::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,  // bad flags, malformed JSON, invalid parameters
  kNoTheorem = 3,   // non-existence certificate, or no theorem applies
  kPropertyFail = 4,
};

/// Runs one command line (without the program name). Output goes to `out`
/// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypbarrier::cli
