#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cbkit::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    input_error = 2,
    domain_error = 3,
};

/// Runs the command line `args` (without the program name) and returns the
/// process exit code. Honors CBKIT_STRICT=1.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cbkit::cli
