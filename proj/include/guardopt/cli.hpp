#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace guardopt::cli {

/// Runs one guardopt command line (args[0] is the program name). Progress goes to
/// `out`; a failure prints one "guardopt: error: ..." line to `err`.
/// Returns 0 on success, 1 on usage errors, 2 on runtime failures, 3 when table
/// revalidation finds a violated threshold.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace guardopt::cli
