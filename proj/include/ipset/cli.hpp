#pragma once

#include <iosfwd>

namespace ipset {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitMismatch = 2, kExitInvalidInput = 3, kExitResourceLimit = 4 };

/// Runs the ipset command line. Reads IPSET_THREADS for the default
/// search parallelism.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ipset
