#include "prk/prational.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "prk/arith.hpp"
#include "prk/errors.hpp"

namespace prk {

namespace detail {

namespace {

struct Mat2 {
    Int a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 mat_mul(const Mat2& x, const Mat2& y, const Int& m) {
    Mat2 r;
    r.a = (x.a * y.a + x.b * y.c) % m;
    r.b = (x.a * y.b + x.b * y.d) % m;
    r.c = (x.c * y.a + x.d * y.c) % m;
    r.d = (x.c * y.b + x.d * y.d) % m;
    return r;
}

}  // namespace

std::pair<Int, Int> lucas_u_pair(const Int& P, int Q0, const Int& n,
                                 const Int& m) {
    if (Q0 != 1 && Q0 != -1) {
        throw domain_error("lucas_u_pair: Q0 must be +1 or -1");
    }
    if (n < 0) {
        throw domain_error("lucas_u_pair: index must be nonnegative");
    }
    if (m < 2) {
        throw domain_error("lucas_u_pair: modulus must be at least 2");
    }
    // M = [[P, -Q0], [1, 0]] satisfies M^n = [[U_{n+1}, -Q0*U_n],
    // [U_n, -Q0*U_{n-1}]].
    Mat2 acc{1, 0, 0, 1};
    Int neg_q0 = (Q0 == 1) ? Int(m - 1) : Int(1);
    neg_q0 %= m;
    Mat2 base{((P % m) + m) % m, neg_q0, 1, 0};
    const mp_bitcnt_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (mp_bitcnt_t i = bits; i-- > 0;) {
        acc = mat_mul(acc, acc, m);
        if (mpz_tstbit(n.get_mpz_t(), i)) {
            acc = mat_mul(acc, base, m);
        }
    }
    return {acc.c, acc.a};
}

}  // namespace detail

FibonacciResidue generalized_fibonacci_mod(const FieldDescriptor& K,
                                           const Int& p) {
    if (!K.real) {
        throw domain_error("generalized Fibonacci residue requires a real "
                           "quadratic field");
    }
    if (p < 3 || !is_prime(p)) {
        throw domain_error("generalized Fibonacci residue requires an odd "
                           "prime p");
    }
    const int f = residual_degree(K, p);  // rejects ramified p
    Int q;
    mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f));
    const Int p2 = p * p;

    const FundamentalUnit eps = fundamental_unit(K);
    // trace(eps) = 2t/sigma: either 2t (integral basis unit) or t (half
    // integer unit, t odd).
    Int T;
    if (eps.sigma == 2) {
        T = eps.t;
    } else {
        T = 2 * eps.t;
    }
    if (T <= 0) {
        throw computation_error("fundamental unit trace must be positive");
    }

    Int residue;
    if (eps.norm == 1) {
        // eps^{-1} is the conjugate: F_q = U_q(T, 1) mod p^2.
        residue = detail::lucas_u_pair(T, 1, q, p2).first;
    } else {
        // Norm -1, q odd: F_q = V_q(T, -1) / V_1 with V_1 = T. Work mod
        // T*p^2 so the exact division survives the reduction.
        const Int m = T * p2;
        const auto [uq, uq1] = detail::lucas_u_pair(T, -1, q, m);
        Int v = (2 * uq1 - T * uq) % m;
        if (v < 0) v += m;
        if (!mpz_divisible_p(v.get_mpz_t(), T.get_mpz_t())) {
            throw computation_error("Lucas value V_q not divisible by V_1");
        }
        residue = (v / T) % p2;
    }

    FibonacciResidue out;
    out.field = K;
    out.p = p;
    out.f = f;
    out.q = q;
    out.residue = residue;
    out.trace_divisible = mpz_divisible_p(T.get_mpz_t(), p.get_mpz_t()) != 0;
    return out;
}

bool unit_is_local_pth_power(const FieldDescriptor& K, const Int& p) {
    return generalized_fibonacci_mod(K, p).residue == 1;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::rational: return "rational";
        case Outcome::not_rational: return "not_rational";
        case Outcome::unknown: return "unknown";
        case Outcome::unsupported: return "unsupported";
    }
    return "unsupported";
}

namespace {

std::string int_str(const Int& n) { return n.get_str(); }

void add_reason(PRationalityVerdict& v, const std::string& tag,
                const std::string& detail) {
    v.reasons.push_back(Evidence{tag, detail});
}

}  // namespace

PRationalityVerdict is_p_rational_real(const FieldDescriptor& K,
                                       const Int& p) {
    if (!K.real) {
        throw domain_error("is_p_rational_real requires a real quadratic "
                           "field");
    }
    if (!is_prime(p)) {
        throw domain_error("is_p_rational_real requires a prime p");
    }

    PRationalityVerdict v;
    if (p == 2) {
        v.outcome = Outcome::unsupported;
        add_reason(v, "unsupported",
                   "criterion implemented for odd primes only");
        return v;
    }
    if (mpz_divisible_p(K.discriminant.get_mpz_t(), p.get_mpz_t())) {
        v.outcome = Outcome::unsupported;
        add_reason(v, "unsupported",
                   "p = " + int_str(p) + " ramifies in Q(sqrt(" +
                       int_str(K.radicand) + "))");
        return v;
    }

    const ClassNumberCertificate cert = class_number_certificate(K);
    v.h = cert.h;
    const bool h_div =
        mpz_divisible_p(cert.h.get_mpz_t(), p.get_mpz_t()) != 0;
    const FibonacciResidue fib = generalized_fibonacci_mod(K, p);
    v.residue = fib.residue;

    if (p == 3) {
        add_reason(v, "advisory",
                   "p = 3: the criterion is applied outside its stated "
                   "range p >= 5");
    }
    if (h_div) {
        add_reason(v, "class-number",
                   "p divides h = " + int_str(cert.h));
    } else {
        add_reason(v, "class-number",
                   "h = " + int_str(cert.h) + " is prime to p");
    }
    add_reason(v, "fibonacci",
               "F_q = " + int_str(fib.residue) + " (mod p^2), q = p^" +
                   std::to_string(fib.f));
    const bool local_pth = (fib.residue == 1);
    if (local_pth) {
        add_reason(v, "fibonacci",
                   "fundamental unit is a local p-th power at p");
        if (fib.trace_divisible) {
            add_reason(v, "advisory",
                       "p divides the unit trace: residue 1 can occur "
                       "without the unit being a local p-th power");
        }
    }

    v.outcome =
        (!h_div && !local_pth) ? Outcome::rational : Outcome::not_rational;
    return v;
}

PRationalityVerdict is_p_rational_imaginary(const FieldDescriptor& K,
                                            const Int& p) {
    if (K.real) {
        throw domain_error("is_p_rational_imaginary requires an imaginary "
                           "quadratic field");
    }
    if (!is_prime(p)) {
        throw domain_error("is_p_rational_imaginary requires a prime p");
    }

    PRationalityVerdict v;
    if (p < 5) {
        v.outcome = Outcome::unsupported;
        add_reason(v, "unsupported",
                   "sufficient condition implemented for p >= 5 only");
        return v;
    }

    const ClassNumberCertificate cert = class_number_certificate(K);
    v.h = cert.h;
    if (mpz_divisible_p(cert.h.get_mpz_t(), p.get_mpz_t())) {
        v.outcome = Outcome::unknown;
        add_reason(v, "class-number",
                   "p divides h = " + int_str(cert.h) +
                       ": the sufficient condition is inconclusive");
    } else {
        v.outcome = Outcome::rational;
        add_reason(v, "class-number",
                   "h = " + int_str(cert.h) +
                       " is prime to p (sufficient for p >= 5)");
    }
    return v;
}

std::vector<Int> quadratic_subfield_radicands(const std::vector<Int>& rads) {
    if (rads.empty()) {
        throw domain_error("subfield enumeration requires at least one "
                           "radicand");
    }
    if (rads.size() > 16) {
        throw domain_error("subfield enumeration supports at most 16 "
                           "radicands");
    }
    std::vector<Int> kernels;
    kernels.reserve(rads.size());
    for (const Int& r : rads) {
        if (r == 0) {
            throw domain_error("radicand must be nonzero");
        }
        const Int k = squarefree_kernel(r);
        if (k == 1) {
            throw domain_error("radicand " + r.get_str() +
                               " is a perfect square");
        }
        kernels.push_back(k);
    }
    const size_t n = kernels.size();
    std::vector<Int> out;
    out.reserve((size_t{1} << n) - 1);
    std::set<Int> seen;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        Int prod = 1;
        for (size_t i = 0; i < n; ++i) {
            if (mask & (size_t{1} << i)) prod *= kernels[i];
        }
        const Int k = squarefree_kernel(prod);
        if (k == 1 || !seen.insert(k).second) {
            throw domain_error("radicands are not multiplicatively "
                               "independent");
        }
        out.push_back(k);
    }
    return out;
}

PRationalityVerdict check_K_alpha(const Int& p, const Int& alpha) {
    if (p <= 3 || !is_prime(p)) {
        throw domain_error("check_K_alpha requires a prime p >= 5");
    }
    if (alpha < 1) {
        throw domain_error("check_K_alpha requires alpha >= 1");
    }
    if (mpz_divisible_p(alpha.get_mpz_t(), p.get_mpz_t())) {
        throw domain_error("check_K_alpha requires gcd(alpha, p) = 1");
    }
    const Int m = alpha * p;

    // Quadratic subfields of Q(sqrt(m(m+2)), sqrt(m(m-2))): the third
    // radicand is the product kernel (m-2)(m+2).
    const std::vector<Int> rads = {squarefree_kernel(m * (m + 2)),
                                   squarefree_kernel(m * (m - 2)),
                                   squarefree_kernel((m - 2) * (m + 2))};

    PRationalityVerdict v;
    bool any_h_div = false;
    Int failing = 0;
    std::optional<FibonacciResidue> unram_fib;
    for (const Int& r : rads) {
        SubfieldCheck sc;
        sc.radicand = r;
        const FieldDescriptor K = make_field(r);
        const ClassNumberCertificate cert = class_number_certificate(K);
        sc.h = cert.h;
        sc.h_divisible =
            mpz_divisible_p(cert.h.get_mpz_t(), p.get_mpz_t()) != 0;
        sc.ramified =
            mpz_divisible_p(K.discriminant.get_mpz_t(), p.get_mpz_t()) != 0;
        if (!sc.ramified) {
            const FibonacciResidue fib = generalized_fibonacci_mod(K, p);
            sc.residue = fib.residue;
            sc.trace_divisible = fib.trace_divisible;
            unram_fib = fib;
        }
        if (sc.h_divisible && !any_h_div) {
            any_h_div = true;
            failing = r;
        }
        v.subfields.push_back(sc);
    }

    if (unram_fib) {
        add_reason(v, "fibonacci",
                   "unramified subfield Q(sqrt(" +
                       int_str(unram_fib->field.radicand) + ")): F_q = " +
                       int_str(unram_fib->residue) + " (mod p^2)");
        if (unram_fib->trace_divisible) {
            add_reason(v, "advisory",
                       "p divides the unit trace of the unramified "
                       "subfield: residue 1 is inconclusive there");
        }
    }

    if (unram_fib && unram_fib->residue == 1 && !unram_fib->trace_divisible) {
        v.outcome = Outcome::not_rational;
        add_reason(v, "fibonacci",
                   "fundamental unit of the unramified subfield is a local "
                   "p-th power");
        return v;
    }
    if (any_h_div) {
        v.outcome = Outcome::unknown;
        add_reason(v, "class-number",
                   "p divides the class number of Q(sqrt(" +
                       int_str(failing) + "))");
        return v;
    }
    v.outcome = Outcome::rational;
    add_reason(v, "class-number",
               "p is prime to the class number of every quadratic subfield");
    add_reason(v, "premise",
               "unit condition at the ramified subfields holds by the "
               "construction of the family and is not verified here");
    return v;
}

PRationalityVerdict check_F_alpha(const Int& p, const Int& alpha) {
    if (!is_prime(p)) {
        throw domain_error("check_F_alpha requires a prime p");
    }
    if (alpha < 1) {
        throw domain_error("check_F_alpha requires alpha >= 1");
    }

    PRationalityVerdict v;
    if (p < 5) {
        v.outcome = Outcome::unsupported;
        add_reason(v, "unsupported",
                   "imaginary sufficient condition requires p >= 5");
        return v;
    }

    // Imaginary quadratic subfields of Q(sqrt(p(p+2)), sqrt(p(p-2)),
    // sqrt(-alpha)), deduplicated and ordered by |radicand|.
    std::set<Int> kernel_set = {
        squarefree_kernel(-alpha),
        squarefree_kernel(-alpha * p * (p + 2)),
        squarefree_kernel(-alpha * p * (p - 2)),
        squarefree_kernel(-alpha * (p - 2) * (p + 2)),
    };
    std::vector<Int> kernels(kernel_set.begin(), kernel_set.end());
    std::sort(kernels.begin(), kernels.end(),
              [](const Int& a, const Int& b) { return abs(a) < abs(b); });

    bool any_h_div = false;
    Int failing = 0;
    for (const Int& r : kernels) {
        SubfieldCheck sc;
        sc.radicand = r;
        const FieldDescriptor K = make_field(r);
        const ClassNumberCertificate cert = class_number_certificate(K);
        sc.h = cert.h;
        sc.h_divisible =
            mpz_divisible_p(cert.h.get_mpz_t(), p.get_mpz_t()) != 0;
        sc.ramified =
            mpz_divisible_p(K.discriminant.get_mpz_t(), p.get_mpz_t()) != 0;
        if (sc.h_divisible && !any_h_div) {
            any_h_div = true;
            failing = r;
        }
        v.subfields.push_back(sc);
    }

    if (any_h_div) {
        v.outcome = Outcome::unknown;
        add_reason(v, "class-number",
                   "p divides the class number of Q(sqrt(" +
                       int_str(failing) + "))");
        return v;
    }
    v.outcome = Outcome::rational;
    add_reason(v, "class-number",
               "p is prime to the class number of every imaginary "
               "quadratic subfield");
    add_reason(v, "premise",
               "p-rationality of the real biquadratic part is an assumed "
               "premise of the construction");
    return v;
}

}  // namespace prk
