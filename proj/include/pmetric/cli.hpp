#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pmetric::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kValidationError = 3,
  kCertificationError = 4,
};

/// Runs one command line. `args` excludes the program name. Never throws;
/// every failure maps to an exit code with a message on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pmetric::cli
