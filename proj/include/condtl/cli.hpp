#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace condtl {

/// Exit statuses of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_input_error = 1, exit_undefined = 2 };

/// Runs one command line (without the program name) and returns the exit
/// status. Subcommands: parse, prob, series, machine, taut, indep.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace condtl
