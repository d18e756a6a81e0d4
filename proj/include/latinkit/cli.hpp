#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Command-line surface. run() is the whole CLI behind a testable interface:
// args exclude the program name, output goes to the given streams, and the
// return value is the process exit code (0 ok, 1 domain error, 2 guard
// exceeded, 3 usage error).

namespace latinkit::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latinkit::cli
