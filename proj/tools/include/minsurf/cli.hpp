#pragma once

#include <iosfwd>

namespace minsurf::cli {

/// Exit codes: 0 pass, 1 check failure, 2 usage or validation error, 3 I/O error.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace minsurf::cli
