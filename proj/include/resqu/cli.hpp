#pragma once

#include <iosfwd>

namespace resqu {

/// Entry point for the resqu command line. Returns the process exit code:
/// 0 on success, 1 on runtime failure, 2 on invalid flags.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace resqu
