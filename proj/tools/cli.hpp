#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twapprox::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kNoSolution = 2,
    kInputError = 3,
    kResource = 4,
};

/// Runs one subcommand; args excludes the program name. Reports go to `out`
/// as one JSON object per line, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace twapprox::cli
