#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hier {

enum ExitCode { kExitOk = 0, kExitInfeasible = 1, kExitInput = 2, kExitInternal = 3 };

// FNV-1a 64 of the raw instance bytes, as 16 hex digits.
std::string instance_digest(std::string_view bytes);

// Full command-line front end. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hier
