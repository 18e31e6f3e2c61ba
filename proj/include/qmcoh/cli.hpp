#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmcoh {

/// Runs the command-line tool. Exit codes: 0 success, 1 input error,
/// 2 size budget, 3 descent failure or cover exhaustion, 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qmcoh
