#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tz::cli {

enum ExitCode : int {
    ok = 0,
    internal_error = 1,
    schema_error = 2,
    math_error = 3,
    bit_limit = 4,
};

/// Runs one invocation. args excludes the program name. The report goes
/// to out, diagnostics to err; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads TWISTED_ZETA_MAX_BITS into the global bit cap. Returns false
/// (after writing to err) when the value is not a non-negative integer.
bool configure_bit_limit_from_env(std::ostream& err);

}  // namespace tz::cli
