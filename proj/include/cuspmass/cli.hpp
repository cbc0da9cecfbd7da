#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cuspmass::cli {

/// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with argv[0] supplied.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cuspmass::cli
