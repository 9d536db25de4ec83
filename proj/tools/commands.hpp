#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subclassical::cli {

/**
 * Run one CLI invocation. `args` excludes the program name. JSON results go
 * to `out` (or the --out file), diagnostics to `err`.
 *
 * Exit codes: 0 success, 1 verification failure, 2 parse error,
 * 3 validation error, 4 complete-positivity violation.
 */
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace subclassical::cli
