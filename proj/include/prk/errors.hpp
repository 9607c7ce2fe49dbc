#pragma once

#include <stdexcept>
#include <string>

namespace prk {

// Input outside an operation's domain (invalid radicand, ramified prime,
// non-coprime moduli, ...). Maps to the CLI usage exit code.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input beyond the documented supported range (primality bound,
// square-free trial-division bound). Also maps to the usage exit code.
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runtime failure on a valid input (precision exhausted, search exhausted).
// Maps to the CLI computational exit code.
struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Analytic class-number value did not round to an integer within tolerance
// even after precision escalation.
struct precision_error : computation_error {
    using computation_error::computation_error;
};

// Prime-progression scan hit the caller's limit. Carries how many
// progression terms were tested before giving up.
struct search_exhausted : computation_error {
    long scan_steps;
    search_exhausted(const std::string& msg, long steps)
        : computation_error(msg), scan_steps(steps) {}
};

}  // namespace prk
