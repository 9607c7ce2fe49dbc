#pragma once

#include "prk/arith.hpp"

namespace prk {

// A quadratic field Q(sqrt(d)) for square-free d.
struct FieldDescriptor {
    Int radicand;      // square-free d != 0, 1
    Int discriminant;  // d if d = 1 (mod 4), else 4d
    bool real;         // d > 0
    int omega;         // number of roots of unity: 6 (d_K=-3), 4 (d_K=-4), 2
};

// Builds the descriptor from any nonzero non-square integer; the radicand
// is reduced to its square-free kernel first.
FieldDescriptor make_field(const Int& n);

// Residual degree of an odd unramified prime: 1 (split) or 2 (inert).
int residual_degree(const FieldDescriptor& K, const Int& p);

// Fundamental unit eps = (t + u*sqrt(d))/sigma > 1 of the maximal order.
struct FundamentalUnit {
    Int t;
    Int u;
    int sigma;         // 2 only possible when d = 1 (mod 4)
    int norm;          // (t^2 - d u^2)/sigma^2, +1 or -1
    double regulator;  // log(eps)
};

FundamentalUnit fundamental_unit(const FieldDescriptor& K);

// log(eps) as a double (high-precision evaluation internally).
double regulator(const FieldDescriptor& K);

}  // namespace prk
