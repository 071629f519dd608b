#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mkstar {

// Exit codes: 0 success, 1 usage / input errors, 2 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mkstar
