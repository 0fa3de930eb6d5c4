#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eja::cli {

enum ExitCode {
  kExitOk = 0,
  kExitHypotheses = 1,
  kExitViolation = 2,
  kExitInput = 3,
};

/// Runs one command. `args` excludes the program name. Input "-" reads `in`;
/// the JSON report (or the --summary digest) goes to `out` unless --output
/// names a file. Usage errors go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace eja::cli
