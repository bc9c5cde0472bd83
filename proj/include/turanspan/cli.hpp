#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace turanspan::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kCertificationFailure = 3 };

// args excludes the program name. Results go to `out` (or --out), one-line
// JSON errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace turanspan::cli
