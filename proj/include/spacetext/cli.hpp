#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spacetext {

// Runs the command line; args excludes the program name. Returns 0 on
// success, 2 on usage errors and 1 on data errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spacetext
