// Command-line entry point, callable in-process for tests.  Subcommands:
// spectrum, butterfly, verify, thouless.  Exit codes: 0 success, 1
// verification failure, 2 usage or IO error.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amo {

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace amo
