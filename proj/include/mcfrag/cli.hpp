#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mcfrag {

// Exit codes: 0 success, 1 unexpected failure, 2 usage error, and
// 10 + ErrorCode for library errors (see exit_code_for).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mcfrag
