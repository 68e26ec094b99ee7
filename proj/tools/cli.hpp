#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hilbert::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs one command; args excludes the program name. Results go to `out`
/// unless --out is given; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hilbert::cli
