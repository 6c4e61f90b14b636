#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace piconn {

// Runs one command line (arguments without the program name) against the
// given streams.  Returns the process exit code: 0 when every requested
// check passed, 1 when a validation or suite check failed (the report is
// still emitted), 2 for unusable input (bad flags, unreadable files,
// malformed JSON, inadmissible substitutions).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace piconn
