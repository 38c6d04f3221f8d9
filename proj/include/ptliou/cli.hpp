// cli.hpp — subcommand driver shared by the executable and the tests

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptl::cli {

enum ExitCode : int { kOk = 0, kCertFailed = 1, kInputError = 2 };

/// Runs one invocation; `args` excludes the program name. Analysis output goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptl::cli
