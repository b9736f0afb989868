#pragma once

// Command-line frontend: `count` and `bench`.

#include <ostream>
#include <string>
#include <vector>

namespace defzeta::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kOtherError = 1;
constexpr int kSupersingular = 2;
constexpr int kSingular = 3;
constexpr int kParseError = 4;

// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace defzeta::cli
