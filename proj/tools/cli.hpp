#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sipkit::cli {

enum ExitCode : int {
  kComputed = 0,
  kInvalidInput = 2,
  kNumericalFailure = 3,
};

/// Runs one `sip` subcommand. `args` excludes the program name. The report
/// goes to `out` as a single JSON document (or a text table with
/// --output text); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sipkit::cli
