#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wavelab::cli {

// Exit codes of the command line.
constexpr int kAllPass = 0;
constexpr int kAnyFail = 1;
constexpr int kConfigError = 2;

// argv-style entry point; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wavelab::cli
