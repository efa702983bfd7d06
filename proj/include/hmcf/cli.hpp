#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hmcf {

/// Exit codes: 0 success, 1 numerical failure, 2 usage or config error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmcf
