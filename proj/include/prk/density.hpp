#pragma once

#include <optional>
#include <vector>

#include "prk/arith.hpp"

namespace prk {

// Published density constant attached to a shift c, when one exists.
// lower_bound = true: the source states "density >= value"; otherwise the
// source states an approximate value ("~ value").
struct ReferenceConstant {
    double value = 0.0;
    bool lower_bound = false;
};

std::optional<ReferenceConstant> reference_constant_for(const Int& c);

struct DensityReport {
    Int c;
    double product_value = 1.0;
    long terms_used = 0;
    double tail_bound = 0.0;
    std::optional<long> empirical_x;
    std::optional<double> empirical_ratio;
    std::optional<ReferenceConstant> reference;
    // True when the computed product certifies the reference claim:
    // product - tail >= value for lower bounds, |product - value| within
    // 0.002 + tail for approximate values.
    std::optional<bool> agreement;
};

// Number of n mod q^2, coprime to q, with n^2 + c = 0 (mod q^2).
// Always 0 or 2 for odd prime q.
int rho_prime(const Int& c, const Int& q);

// Partial Euler product prod_{odd q <= cutoff} (1 - rho'(q^2)/(q(q-1)))
// with a rigorous tail bound (sum_{q > cutoff} 2/(q(q-1)) < 2/cutoff).
DensityReport euler_density(const Int& c, long cutoff);

struct LowerBoundProduct {
    double value = 1.0;
    double tail_bound = 0.0;
    long terms = 0;
};

// prod_{k=1..K} (1 - 2/(4k(4k+1))), the closed-form minorant of the c = 1
// product, with tail bound sum_{k>K} 2/(4k(4k+1)) < 1/(8K).
LowerBoundProduct lowerbound_product(long terms);

struct EmpiricalDensity {
    long count_squarefree = 0;
    long prime_count = 0;
    double ratio = 0.0;
};

// Fraction of primes p <= X with p^2 + c square-free, by sieving roots of
// n^2 = -c (mod q^2) over prime squares.
EmpiricalDensity empirical_density(const Int& c, long X);

// Bonferroni bound max(0, sum(deltas) - (n - 1)).
double intersection_lower_bound(const std::vector<double>& deltas);

}  // namespace prk
