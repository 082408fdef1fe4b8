#pragma once

#include <iosfwd>

namespace cayley::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // verification came back false
  kUsage = 2,     // bad flags or parameters
  kIo = 3,
  kResource = 4,  // a size guard or search budget was hit
};

/// Runs the command line `argv` against the given streams and returns the
/// exit code. `in` is read by `hash` when no --in file is given.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cayley::cli
