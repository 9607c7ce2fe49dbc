#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prk/classnumber.hpp"
#include "prk/quadfield.hpp"

namespace prk {

// Residue of the generalized Fibonacci number F_q = (eps^q - eps^-q)/(eps -
// eps^-1) modulo p^2, with q = p^f for the residual degree f.
struct FibonacciResidue {
    FieldDescriptor field;
    Int p;
    int f;
    Int q;
    Int residue;           // in [0, p^2)
    bool trace_divisible;  // p | trace(eps): residue 1 is then inconclusive
                           // as a local p-th-power certificate
};

FibonacciResidue generalized_fibonacci_mod(const FieldDescriptor& K,
                                           const Int& p);

// True iff the Fibonacci residue equals 1.
bool unit_is_local_pth_power(const FieldDescriptor& K, const Int& p);

enum class Outcome { rational, not_rational, unknown, unsupported };

const char* outcome_name(Outcome o);

struct Evidence {
    std::string tag;     // e.g. class-number, fibonacci, advisory
    std::string detail;  // human-readable
};

// Per-subfield record used by the multiquadratic checks.
struct SubfieldCheck {
    Int radicand;
    std::optional<Int> h;
    bool h_divisible = false;
    bool ramified = false;             // p ramified in this subfield
    std::optional<Int> residue;        // Fibonacci residue when computable
    bool trace_divisible = false;
};

struct PRationalityVerdict {
    Outcome outcome = Outcome::unsupported;
    std::vector<Evidence> reasons;
    std::optional<Int> h;        // quadratic cases
    std::optional<Int> residue;  // real quadratic case
    std::vector<SubfieldCheck> subfields;  // multiquadratic cases
};

// Real quadratic field, odd unramified p: rational iff p does not divide h
// and the Fibonacci residue differs from 1. p = 3 verdicts carry an
// advisory (the criteria are stated for p >= 5 / odd p).
PRationalityVerdict is_p_rational_real(const FieldDescriptor& K, const Int& p);

// Imaginary quadratic field, p >= 5: rational if p does not divide h;
// unknown when p | h (only the sufficient condition is implemented).
PRationalityVerdict is_p_rational_imaginary(const FieldDescriptor& K,
                                            const Int& p);

// Square-free kernels of all nonempty subset products of multiplicatively
// independent radicands: the quadratic subfields of the compositum.
std::vector<Int> quadratic_subfield_radicands(const std::vector<Int>& rads);

// K_alpha = Q(sqrt(m(m+2)), sqrt(m(m-2))) with m = alpha*p: checks the
// class-number condition on the three quadratic subfields; the unit
// condition for the two p-ramified subfields is an assumed premise, and the
// Fibonacci residue of the unramified subfield is attached as evidence.
PRationalityVerdict check_K_alpha(const Int& p, const Int& alpha);

// F_alpha = Q(sqrt(p(p+2)), sqrt(p(p-2)), sqrt(-alpha)): checks p | h for
// the four imaginary quadratic subfields; the real biquadratic part is an
// assumed premise.
PRationalityVerdict check_F_alpha(const Int& p, const Int& alpha);

namespace detail {
// (U_n, U_{n+1}) mod m for the Lucas sequence of x^2 - P x + Q0, computed
// by 2x2 matrix powers (division-free). Q0 restricted to +/-1.
std::pair<Int, Int> lucas_u_pair(const Int& P, int Q0, const Int& n,
                                 const Int& m);
}  // namespace detail

}  // namespace prk
