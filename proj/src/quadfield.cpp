#include "prk/quadfield.hpp"

#include <array>
#include <map>
#include <sstream>
#include <vector>

#include "prk/real.hpp"

namespace prk {

FieldDescriptor make_field(const Int& n) {
    if (n == 0) throw domain_error("make_field: radicand must be nonzero");
    if (n > 0 && is_perfect_square(n))
        throw domain_error("make_field: radicand must not be a perfect square");
    FieldDescriptor K;
    K.radicand = squarefree_kernel(n);
    bool one_mod_4 = mpz_fdiv_ui(K.radicand.get_mpz_t(), 4) == 1;
    K.discriminant = one_mod_4 ? K.radicand : Int(4 * K.radicand);
    K.real = K.radicand > 0;
    K.omega = 2;
    if (K.discriminant == -3) K.omega = 6;
    if (K.discriminant == -4) K.omega = 4;
    return K;
}

int residual_degree(const FieldDescriptor& K, const Int& p) {
    if (p < 3 || !is_prime(p))
        throw domain_error("residual_degree: p must be an odd prime");
    if (mpz_divisible_p(K.discriminant.get_mpz_t(), p.get_mpz_t())) {
        std::ostringstream msg;
        msg << "residual_degree: " << p << " is ramified in Q(sqrt("
            << K.radicand << "))";
        throw domain_error(msg.str());
    }
    return kronecker(K.discriminant, p) == 1 ? 1 : 2;
}

namespace {

Real regulator_real(const FundamentalUnit& eps, const Int& d,
                    mpfr_prec_t prec) {
    Real val = (Real::of(eps.t, prec) + Real::of(eps.u, prec) *
                sqrt(Real::of(d, prec))) / long(eps.sigma);
    return log(val);
}

}  // namespace

FundamentalUnit fundamental_unit(const FieldDescriptor& K) {
    if (!K.real)
        throw domain_error("fundamental_unit: field must be real");

    // Continued fraction of (r + sqrt(D))/2 over the discriminant D, with
    // r = D mod 2; the expansion is eventually purely periodic, and the
    // convergent denominators over one period assemble the unit.
    const Int D = K.discriminant;
    Int s;
    mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());

    Int P = mpz_fdiv_ui(D.get_mpz_t(), 2);
    Int Q = 2;
    std::map<std::pair<Int, Int>, size_t> seen;
    std::vector<std::array<Int, 3>> steps;  // (P_i, Q_i, a_i)
    size_t cycle_start = 0;
    while (true) {
        auto key = std::make_pair(P, Q);
        auto it = seen.find(key);
        if (it != seen.end()) {
            cycle_start = it->second;
            break;
        }
        seen.emplace(key, steps.size());
        if (Q <= 0)
            throw computation_error(
                "fundamental_unit: continued fraction left reduced range");
        Int a = (P + s) / Q;
        steps.push_back({P, Q, a});
        Int P2 = a * Q - P;
        Int num = D - P2 * P2;
        if (!mpz_divisible_p(num.get_mpz_t(), Q.get_mpz_t()))
            throw computation_error(
                "fundamental_unit: continued fraction state corrupted");
        Int Q2 = num / Q;
        P = P2;
        Q = Q2;
    }

    // alpha_i = (P_i + sqrt(D))/Q_i is purely periodic; with B the
    // convergent denominators of the cycle, eps = B_{l-1} alpha_i + B_{l-2}.
    const Int Pi = steps[cycle_start][0];
    const Int Qi = steps[cycle_start][1];
    Int B_prev = 0, B_prev2 = 1;  // B_{-1} = 0, B_{-2} = 1
    for (size_t k = cycle_start; k < steps.size(); ++k) {
        const Int& a = steps[k][2];
        Int B_next = a * B_prev + B_prev2;
        B_prev2 = B_prev;
        B_prev = B_next;
    }

    // eps = (x + y*sqrt(D)) / Qi
    Int x = B_prev * Pi + B_prev2 * Qi;
    Int y = B_prev;
    Int num_t = x, num_u = y, den = Qi;
    if (mpz_fdiv_ui(D.get_mpz_t(), 4) == 0) num_u *= 2;  // sqrt(D)=2 sqrt(d)
    Int g = gcd(gcd(num_t, num_u), den);
    num_t /= g;
    num_u /= g;
    den /= g;
    if (den != 1 && den != 2)
        throw computation_error("fundamental_unit: unexpected denominator");

    FundamentalUnit eps;
    eps.t = num_t;
    eps.u = num_u;
    eps.sigma = static_cast<int>(den.get_si());
    Int norm4 = eps.t * eps.t - K.radicand * eps.u * eps.u;
    Int sig2 = Int(eps.sigma) * eps.sigma;
    if (norm4 == sig2)
        eps.norm = 1;
    else if (norm4 == -sig2)
        eps.norm = -1;
    else
        throw computation_error("fundamental_unit: unit relation violated");
    eps.regulator = regulator_real(eps, K.radicand, default_precision())
                        .to_double();
    return eps;
}

double regulator(const FieldDescriptor& K) {
    if (!K.real) throw domain_error("regulator: field must be real");
    FundamentalUnit eps = fundamental_unit(K);
    return eps.regulator;
}

}  // namespace prk
