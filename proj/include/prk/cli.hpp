#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prk {

// Parses and executes one CLI invocation (argv without the program name).
// Report goes to `out` (or the --out path); diagnostics go to `err`.
// Exit codes: 0 success, 1 verification mismatch, 2 usage error,
// 3 computational error (precision loss / search exhausted).
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace prk
