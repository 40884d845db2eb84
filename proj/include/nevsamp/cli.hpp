#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nevsamp {

// Entry point behind the nevsamp binary. Exit codes: 0 success, 2 usage or
// precondition errors (machine-readable JSON on err), 1 internal errors.
int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nevsamp
