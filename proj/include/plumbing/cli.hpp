#pragma once

#include <iosfwd>

namespace plumbing {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 2,
  kExitUnstable = 3,
  kExitNotQuasiProjective = 10,
};

/// Runs the `plumb` command line; output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plumbing
