#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace broadgen {

// Exit statuses of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_user_error = 1, exit_budget = 2 };

// Runs one command; args excludes the program name. Output and diagnostics
// go to the given streams, so the tool can be driven in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace broadgen
