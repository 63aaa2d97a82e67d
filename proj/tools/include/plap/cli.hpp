#pragma once

// Entry point of the `plap` command line tool, callable in-process so tests can
// drive it without spawning a shell.

#include <iosfwd>
#include <string>
#include <vector>

namespace plap::cli {

enum ExitCode : int {
  kSuccess = 0,
  kViolation = 1,  ///< an asserted inequality or invariant failed, or a computation failed
  kUsage = 2,      ///< malformed flags or out-of-range parameters
};

/// `args` excludes the program name. Data goes to `out` (or files), messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plap::cli
