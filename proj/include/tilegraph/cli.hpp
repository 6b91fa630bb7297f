#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tilegraph/error.hpp"

namespace tilegraph::cli {

/// 0 success, 1 invalid data, 2 failed internal check, 3 resource limit.
int exit_code_for(const Error& e) noexcept;

/// Runs the command line tool. Output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tilegraph::cli
