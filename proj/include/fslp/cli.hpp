#pragma once

#include <string>
#include <vector>

namespace fslp {

/// Run one CLI invocation. `argv` follows the usual convention (element 0
/// is the program name). Returns the exit status: 0 on success, 2 on a
/// usage error, 1 on a computational failure (the error name goes to the
/// diagnostic stream).
int run(const std::vector<std::string>& argv);

}  // namespace fslp
