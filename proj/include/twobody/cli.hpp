#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twobody {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 computation failure, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(int argc, char** argv);

}  // namespace twobody
