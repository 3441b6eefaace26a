#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "algebra_file.hpp"
#include "dgla/dgla.hpp"
#include "dgla/errors.hpp"

namespace dgla::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_invariant = 2,
  exit_criterion = 3,
  exit_no_convergence = 4,
};

/// Bad command-line usage that CLI11 cannot see (wrong kind for a command,
/// unknown --mode value for this file, malformed --degrees).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A normalization problem (g, h, q) built from a file.
struct Instance {
  std::string mode;
  Dgla g;
  DglaSub h;
  Vec q;
};

/// Modes: rigidity, unitality, subalgebra, pair, graph, into-subalgebra.
/// An empty mode picks the default for the file kind.
Instance build_instance(const AlgebraFile& file, std::string mode, const std::string& subspace);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color);

/// ANSI styling on a terminal unless NO_COLOR is set to a non-empty value.
bool color_enabled(bool stdout_is_tty);

}  // namespace dgla::cli
