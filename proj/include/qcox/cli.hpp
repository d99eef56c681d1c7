#pragma once

#include <iosfwd>

namespace qcox {

// Runs one subcommand.  Exit codes: 0 success, 1 property violated,
// 2 budget exhausted, 3 invalid input or usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcox
