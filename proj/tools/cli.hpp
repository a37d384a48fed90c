#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace barronhjb::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitIterCap = 2,
  kExitNotContractive = 3,
  kExitValidation = 4,
  kExitIo = 5,
  kExitBadArgs = 6,
};

/// Runs the command line (args excludes the program name). Final JSON goes to
/// out when no --out file is given; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace barronhjb::cli
