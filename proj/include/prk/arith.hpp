#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "prk/errors.hpp"

namespace prk {

using Int = mpz_class;

// Kronecker symbol (a|n), the completely multiplicative extension of the
// Jacobi symbol to all nonzero n. Zero iff gcd(a, n) > 1.
int kronecker(const Int& a, const Int& n);

// Deterministic primality test. Exact for n < 3.317e24 (fixed Miller-Rabin
// witness set); larger inputs raise unsupported_error rather than risk a
// probabilistic answer.
bool is_prime(const Int& n);

// Largest n for which is_prime gives a deterministic answer.
const Int& is_prime_supported_bound();

// n = s * m^2 with s square-free and sign(s) = sign(n); m > 0 maximal.
// Trial division up to trial_bound; the unfactored cofactor is then decided
// exactly when it is < trial_bound^3 (it can only be 1, a prime, a prime
// square, or a product of two distinct primes). Beyond that the cofactor
// could hide a square factor, so the call fails with unsupported_error.
std::pair<Int, Int> squarefree_decompose(const Int& n,
                                         unsigned long trial_bound = 1000000);

// The square-free part s of n.
Int squarefree_kernel(const Int& n);

bool is_perfect_square(const Int& n);

// Solution of a simultaneous congruence system x = r_i (mod m_i) with
// pairwise coprime moduli.
struct CrtPlan {
    std::vector<std::pair<Int, Int>> pairs;  // (residue, modulus) as given
    Int combined_residue;                    // 0 <= l < D
    Int combined_modulus;                    // D = product of the moduli
};

CrtPlan crt_combine(const std::vector<std::pair<Int, Int>>& pairs);

// Residue a + b*sqrt(d) modulo M, the carrier for unit powers.
struct QuadRingElement {
    Int a, b;  // reduced to [0, M)
    Int d;     // ring radicand (square-free)
    Int M;     // modulus >= 2
};

QuadRingElement make_quad_ring_element(const Int& a, const Int& b,
                                       const Int& d, const Int& M);
QuadRingElement quad_ring_mul(const QuadRingElement& x,
                              const QuadRingElement& y);
// Square-and-multiply; e = 0 gives the ring identity (1, 0).
QuadRingElement quad_ring_pow(const QuadRingElement& base, const Int& e);

// Square root of a modulo an odd prime q (Tonelli-Shanks); nullopt when a
// is a non-residue. a = 0 yields 0.
std::optional<Int> mod_sqrt(const Int& a, const Int& q);

// Ascending primes <= n (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_upto(std::uint32_t n);

}  // namespace prk
