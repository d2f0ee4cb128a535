#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toda {

// Exit codes: 0 success, 1 verification failure, 2 bad input.
enum ExitCode { kExitOk = 0, kExitVerifyFailed = 1, kExitBadInput = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toda
