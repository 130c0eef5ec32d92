#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sconv::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsage = 2, kResource = 3 };

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sconv::cli
