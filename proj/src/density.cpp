#include "prk/density.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>

#include "prk/errors.hpp"

namespace prk {

std::optional<ReferenceConstant> reference_constant_for(const Int& c) {
    if (c == 1) return ReferenceConstant{0.834, false};
    if (c == -2) return ReferenceConstant{0.931, true};
    if (c == 2) return ReferenceConstant{0.920, true};
    if (c == 4) return ReferenceConstant{0.834, true};
    return std::nullopt;
}

int rho_prime(const Int& c, const Int& q) {
    if (q < 3 || !is_prime(q)) {
        throw domain_error("rho_prime requires an odd prime q");
    }
    if (mpz_divisible_p(c.get_mpz_t(), q.get_mpz_t())) {
        // n^2 = -c = 0 (mod q) forces q | n, excluded by coprimality.
        return 0;
    }
    return (kronecker(-c, q) == 1) ? 2 : 0;
}

DensityReport euler_density(const Int& c, long cutoff) {
    if (cutoff < 100) {
        throw domain_error("euler_density requires cutoff >= 100");
    }
    DensityReport rep;
    rep.c = c;
    double product = 1.0;
    long terms = 0;
    for (uint32_t q : primes_upto(cutoff)) {
        if (q == 2) continue;
        const Int qi(q);
        const int rho = rho_prime(c, qi);
        ++terms;
        if (rho != 0) {
            product *= 1.0 - static_cast<double>(rho) /
                                 (static_cast<double>(q) * (q - 1.0));
        }
    }
    rep.product_value = product;
    rep.terms_used = terms;
    rep.tail_bound = product * 2.0 / static_cast<double>(cutoff);
    rep.reference = reference_constant_for(c);
    if (rep.reference) {
        if (rep.reference->lower_bound) {
            rep.agreement =
                (product - rep.tail_bound >= rep.reference->value);
        } else {
            rep.agreement = (std::fabs(product - rep.reference->value) <=
                             0.002 + rep.tail_bound);
        }
    }
    return rep;
}

LowerBoundProduct lowerbound_product(long terms) {
    if (terms < 1) {
        throw domain_error("lowerbound_product requires at least one term");
    }
    LowerBoundProduct out;
    double product = 1.0;
    for (long k = 1; k <= terms; ++k) {
        const double den = 4.0 * k * (4.0 * k + 1.0);
        product *= 1.0 - 2.0 / den;
    }
    out.value = product;
    out.terms = terms;
    out.tail_bound = 1.0 / (8.0 * static_cast<double>(terms));
    return out;
}

EmpiricalDensity empirical_density(const Int& c, long X) {
    if (X < 1000) {
        throw domain_error("empirical_density requires X >= 1000");
    }
    if (X > 100000000) {
        throw unsupported_error("empirical_density cutoff above 10^8");
    }

    // is_p[n]: n is prime. alive[n]: p^2 + c not yet shown non-square-free.
    std::vector<uint8_t> is_p(static_cast<size_t>(X) + 1, 1);
    is_p[0] = 0;
    if (X >= 1) is_p[1] = 0;
    for (long i = 2; i * i <= X; ++i) {
        if (!is_p[i]) continue;
        for (long m = i * i; m <= X; m += i) is_p[m] = 0;
    }
    std::vector<uint8_t> alive(static_cast<size_t>(X) + 1, 1);

    long prime_count = 0;
    for (long n = 2; n <= X; ++n) {
        if (is_p[n]) ++prime_count;
    }

    // p = 2 handled directly (0 is never square-free; +-1 always is).
    long count = 0;
    {
        const Int av = abs(Int(4 + c));
        if (av == 1) {
            ++count;
        } else if (av > 1) {
            const auto [kern, m] = squarefree_decompose(av);
            (void)kern;
            if (m == 1) ++count;
        }
    }

    // q = 2: for odd p, p^2 = 1 (mod 8), so 4 | p^2 + c iff c = 3 (mod 4).
    const bool all_odd_dead = (mpz_fdiv_ui(c.get_mpz_t(), 4) == 3);
    if (!all_odd_dead) {
        const Int minus_c = -c;
        for (uint32_t q : primes_upto(X + 3)) {
            if (q == 2) continue;
            const Int qi(q);
            const Int q2 = qi * qi;
            if (mpz_divisible_p(c.get_mpz_t(), qi.get_mpz_t())) {
                if (mpz_divisible_p(c.get_mpz_t(), q2.get_mpz_t())) {
                    // q^2 | c: q^2 | p^2 + c iff q | p, i.e. p = q.
                    if (static_cast<long>(q) <= X) alive[q] = 0;
                }
                // q || c: no solutions at all.
                continue;
            }
            const auto r0 = mod_sqrt(minus_c, qi);
            if (!r0) continue;
            // Hensel lift r0 to a root mod q^2: r = r0 + q*t with
            // t = (-c - r0^2)/q * (2 r0)^{-1} (mod q).
            Int s = (minus_c - (*r0) * (*r0)) / qi;
            s %= qi;
            if (s < 0) s += qi;
            Int inv;
            Int two_r = 2 * (*r0);
            if (mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(),
                           qi.get_mpz_t()) == 0) {
                throw computation_error("Hensel lift failed for q = " +
                                        qi.get_str());
            }
            Int t = (s * inv) % qi;
            Int root = *r0 + t * qi;
            root %= q2;
            if (root < 0) root += q2;
            const long q2l = static_cast<long>(q) * static_cast<long>(q);
            for (int side = 0; side < 2; ++side) {
                const Int rr = (side == 0) ? root : Int(q2 - root);
                if (rr >= q2) continue;  // root = 0 edge
                if (!rr.fits_slong_p()) continue;
                for (long n = rr.get_si(); n <= X; n += q2l) {
                    if (n >= 0) alive[n] = 0;
                }
                if (root == q2 - root) break;  // double root edge
            }
        }
    }

    for (long n = 3; n <= X; n += 2) {
        if (is_p[n] && !all_odd_dead && alive[n]) ++count;
    }

    EmpiricalDensity out;
    out.count_squarefree = count;
    out.prime_count = prime_count;
    out.ratio = prime_count > 0
                    ? static_cast<double>(count) / prime_count
                    : 0.0;
    return out;
}

double intersection_lower_bound(const std::vector<double>& deltas) {
    if (deltas.empty()) {
        throw domain_error("intersection_lower_bound requires at least one "
                           "density");
    }
    double sum = 0.0;
    for (double d : deltas) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw domain_error("densities must lie in [0, 1]");
        }
        sum += d;
    }
    const double bound = sum - (static_cast<double>(deltas.size()) - 1.0);
    return bound > 0.0 ? bound : 0.0;
}

}  // namespace prk
