#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fslgeom {

// Exit codes of the command-line front end.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_degenerate = 3;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fslgeom
