#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace valq {

// exit codes: 0 success or certified, 2 inconclusive, 1 error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace valq
