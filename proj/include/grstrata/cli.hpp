#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace grstrata {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitCasesFailed = 1,  // verify: some cases failed
    kExitUsage = 2,        // bad flags, malformed input, empty stratum
    kExitUncovered = 3,    // the answer is Unknown or outside the covered range
};

/// Runs one command line (args excludes the program name). Everything the
/// command prints goes to out/err, files named by -o excepted.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grstrata
