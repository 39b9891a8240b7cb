#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schroder_lab::cli {

// Runs one command line (args[0] is the program name). Data goes to `out`
// unless --out or SCHRODER_LAB_OUT redirects it to a file; diagnostics go
// to `err`. Returns the process exit code: 0 success, 1 a failed check or a
// computation error, 2 a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schroder_lab::cli
