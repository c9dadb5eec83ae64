#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mkt::cli {

/// Runs one toolkit invocation. Writes the JSON envelope (or CSV) to `out`
/// and human diagnostics to `err`. Returns the process exit code:
/// 0 = ok, 1 = a verification check failed, 2 = invalid invocation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for an envelope status string ("ok", "fail", "error").
int exit_code_for_status(const std::string& status);

} // namespace mkt::cli
