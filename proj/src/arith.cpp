#include "prk/arith.hpp"

#include <array>
#include <sstream>

namespace prk {

int kronecker(const Int& a, const Int& n) {
    if (n == 0) throw domain_error("kronecker: n must be nonzero");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

const Int& is_prime_supported_bound() {
    // Sorenson & Webster: SPRP to bases 2..37 is exact below this value.
    static const Int bound("3317044064679887385961981");
    return bound;
}

namespace {

bool miller_rabin_witness(const Int& n, const Int& n_minus_1, const Int& d,
                          unsigned long s, unsigned long a) {
    Int x;
    Int base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n >= is_prime_supported_bound())
        throw unsupported_error(
            "is_prime: input exceeds the deterministic witness-set bound "
            "3.317e24");
    static const std::array<unsigned long, 12> witnesses = {
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long w : witnesses) {
        if (n == w) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    }
    Int n_minus_1 = n - 1;
    Int d = n_minus_1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long w : witnesses)
        if (!miller_rabin_witness(n, n_minus_1, d, s, w)) return false;
    return true;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::pair<Int, Int> squarefree_decompose(const Int& n,
                                         unsigned long trial_bound) {
    if (n == 0) throw domain_error("squarefree_decompose: n must be nonzero");
    bool negative = n < 0;
    Int rem = abs(n);
    Int s = 1, m = 1;

    auto extract = [&](unsigned long t) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), t)) {
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), t);
            ++e;
        }
        for (unsigned long i = 0; i < e / 2; ++i) m *= t;
        if (e % 2) s *= t;
    };

    extract(2);
    extract(3);
    // remaining candidate divisors are 6k +/- 1
    unsigned long t = 5;
    bool exhausted_bound = false;
    while (rem > 1) {
        Int t2 = Int(t) * t;
        if (t2 > rem) break;
        if (t > trial_bound) {
            exhausted_bound = true;
            break;
        }
        extract(t);
        extract(t + 2);
        t += 6;
    }

    if (rem > 1) {
        if (!exhausted_bound) {
            // loop left because t^2 > rem: the cofactor is prime
            s *= rem;
        } else {
            // every prime factor of rem exceeds trial_bound
            Int cube = Int(trial_bound);
            cube = cube * cube * cube;
            if (rem >= cube)
                throw unsupported_error(
                    "squarefree_decompose: unfactored cofactor >= "
                    "trial_bound^3 could hide a square factor");
            if (is_perfect_square(rem)) {
                Int r;
                mpz_sqrt(r.get_mpz_t(), rem.get_mpz_t());
                m *= r;
            } else {
                // < bound^3 with all factors > bound: prime or a product of
                // two distinct primes; square-free either way
                s *= rem;
            }
        }
    }

    if (negative) s = -s;
    return {s, m};
}

Int squarefree_kernel(const Int& n) { return squarefree_decompose(n).first; }

CrtPlan crt_combine(const std::vector<std::pair<Int, Int>>& pairs) {
    if (pairs.empty())
        throw domain_error("crt_combine: empty congruence system");
    for (const auto& [r, m] : pairs) {
        (void)r;
        if (m < 1) throw domain_error("crt_combine: modulus must be >= 1");
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        for (size_t j = i + 1; j < pairs.size(); ++j) {
            Int g = gcd(pairs[i].second, pairs[j].second);
            if (g != 1) {
                std::ostringstream msg;
                msg << "crt_combine: moduli " << pairs[i].second << " (pair "
                    << i << ") and " << pairs[j].second << " (pair " << j
                    << ") share factor " << g;
                throw domain_error(msg.str());
            }
        }
    }

    Int x = 0, modulus = 1;
    for (const auto& [r, m] : pairs) {
        if (m == 1) continue;
        Int rm;
        mpz_fdiv_r(rm.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
        // solve x' = x (mod modulus), x' = rm (mod m)
        Int inv;
        if (!mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t()))
            throw domain_error("crt_combine: internal inversion failure");
        Int k = ((rm - x) * inv) % m;
        if (k < 0) k += m;
        x += modulus * k;
        modulus *= m;
    }
    return CrtPlan{pairs, x, modulus};
}

QuadRingElement make_quad_ring_element(const Int& a, const Int& b,
                                       const Int& d, const Int& M) {
    if (M < 2) throw domain_error("quad ring: modulus must be >= 2");
    QuadRingElement e{a % M, b % M, d, M};
    if (e.a < 0) e.a += M;
    if (e.b < 0) e.b += M;
    return e;
}

QuadRingElement quad_ring_mul(const QuadRingElement& x,
                              const QuadRingElement& y) {
    if (x.d != y.d || x.M != y.M)
        throw domain_error("quad ring: mismatched ring parameters");
    QuadRingElement r;
    r.d = x.d;
    r.M = x.M;
    r.a = (x.a * y.a + x.d * x.b * y.b) % x.M;
    r.b = (x.a * y.b + x.b * y.a) % x.M;
    if (r.a < 0) r.a += x.M;  // d may be negative
    if (r.b < 0) r.b += x.M;
    return r;
}

QuadRingElement quad_ring_pow(const QuadRingElement& base, const Int& e) {
    if (e < 0) throw domain_error("quad_ring_pow: exponent must be >= 0");
    QuadRingElement result = make_quad_ring_element(1, 0, base.d, base.M);
    QuadRingElement sq = base;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) result = quad_ring_mul(result, sq);
        if (i + 1 < bits) sq = quad_ring_mul(sq, sq);
    }
    return result;
}

std::optional<Int> mod_sqrt(const Int& a, const Int& q) {
    Int av;
    mpz_fdiv_r(av.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
    if (av == 0) return Int(0);
    if (kronecker(av, q) != 1) return std::nullopt;

    auto powm = [&](const Int& b, const Int& e) {
        Int r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
        return r;
    };

    if (mpz_fdiv_ui(q.get_mpz_t(), 4) == 3) return powm(av, (q + 1) / 4);

    // Tonelli-Shanks: q - 1 = u * 2^s with u odd
    Int u = q - 1;
    unsigned long s = mpz_scan1(u.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(u.get_mpz_t(), u.get_mpz_t(), s);
    Int z = 2;
    while (kronecker(z, q) != -1) ++z;

    Int m(s), c = powm(z, u), t = powm(av, u), r = powm(av, (u + 1) / 2);
    while (t != 1) {
        Int t2 = t;
        unsigned long i = 0;
        while (t2 != 1) {
            t2 = (t2 * t2) % q;
            ++i;
        }
        Int b = c;
        for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % q;
        m = Int(i);
        c = (b * b) % q;
        t = (t * c) % q;
        r = (r * b) % q;
    }
    return r;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace prk
