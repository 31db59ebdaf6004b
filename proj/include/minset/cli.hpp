#pragma once

#include <iosfwd>

namespace minset {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitUsage = 2,
  kExitNotCertified = 3,
  kExitGuard = 4,
};

/// Dispatches `minset <subcommand> ...`. Subcommands: thresholds, certify,
/// koch, estimate, ls, sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minset
