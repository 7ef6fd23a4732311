#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picard {

/// Runs one CLI invocation. Reports go to `out`, usage text and
/// diagnostics to `err`. Exit codes: 0 success, 1 input validation error,
/// 2 internal invariant violation.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

}  // namespace picard
