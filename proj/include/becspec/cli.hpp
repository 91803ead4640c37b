// cli.hpp — subcommand front end, exposed as a function so tests can drive it in-process

#pragma once

#include <string>
#include <vector>

namespace becspec::cli {

// Exit codes: 0 success, 2 invalid arguments, 3 solver non-convergence or
// unstable steady state, 4 oracle truncation/degenerate solve.
inline constexpr int kExitOk = 0;
inline constexpr int kExitArgs = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitOracle = 4;

// argv-style entry point (args exclude the program name).
int run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

} // namespace becspec::cli
