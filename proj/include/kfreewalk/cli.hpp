#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kfreewalk {

/// Entry point of the kfreewalk command line. `args` excludes the program
/// name. Returns the process exit code: 0 on success, the number of failed
/// checks for `verify`, 1 for an oracle mismatch, 2 for invalid input and
/// 3 for I/O failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kfreewalk
