#pragma once

#include <string>
#include <vector>

namespace tgideal {

/// Runs one CLI invocation (arguments without the program name) and returns
/// the process exit code: 0 success, 2 invalid input, 3 verification FAIL
/// verdict, 1 internal error. Never throws on bad input.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace tgideal
