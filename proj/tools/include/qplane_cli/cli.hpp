#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qplane::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kNonConvergence = 3,
};

/// Entry point behind the qplane binary; args excludes the program name.
/// Reads QPLANE_MAX_WINDOW and QPLANE_STORE from the environment.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qplane::cli
