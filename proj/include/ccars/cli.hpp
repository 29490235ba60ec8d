#pragma once

#include "ccars/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ccars::cli {

enum ExitCode : int { ok = 0, io_error = 1, usage_error = 2, numerical_error = 3 };

/// Runs a resolved configuration and writes the subcommand's CSV to `out`.
/// Diagnostics go to `log`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Entry point behind `main`: parses argv, dispatches, writes files.
/// `args` excludes the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Ready-to-run command lines for the standard data sets.
std::string recipes();

/// The defaults table as `key = value  # help` lines.
std::string show_defaults();

}  // namespace ccars::cli
