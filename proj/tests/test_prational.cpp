#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "prk/prational.hpp"

using prk::Int;

namespace {

// Exact Fibonacci residue via symbolic unit powers: with eps = (t+u sqrt d)/s
// and eps^q = (A + B sqrt d)/s^q, the quotient is B/(u s^(q-1)) for norm +1
// and A/(t s^(q-1)) for norm -1 (odd q).
Int exact_fibonacci_mod(const prk::FieldDescriptor& K, std::int64_t p) {
    const auto eps = prk::fundamental_unit(K);
    const int f = prk::residual_degree(K, p);
    unsigned long q = static_cast<unsigned long>(p);
    if (f == 2) q *= static_cast<unsigned long>(p);
    const auto [A, B] = oracle::unit_power_exact(eps.t, eps.u, K.radicand, q);
    Int sig_pow = 1;
    for (unsigned long i = 0; i + 1 < q; ++i) sig_pow *= eps.sigma;
    const Int num = (eps.norm == 1) ? B : A;
    const Int den = ((eps.norm == 1) ? eps.u : eps.t) * sig_pow;
    REQUIRE_EQ(num % den, 0);
    Int res = (num / den) % (Int(p) * p);
    if (res < 0) res += Int(p) * p;
    return res;
}

}  // namespace

TEST_SUITE("prational") {

TEST_CASE("lucas_u_pair pinned value and errors") {
    // U_49(4, 1) mod 49
    const auto [u, u1] = prk::detail::lucas_u_pair(4, 1, 49, 49);
    CHECK_EQ(u, 29);
    CHECK_THROWS_AS(prk::detail::lucas_u_pair(4, 2, 10, 49),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::detail::lucas_u_pair(4, 1, -1, 49),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::detail::lucas_u_pair(4, 1, 10, 1), prk::domain_error);
}

TEST_CASE("lucas_u_pair matches the literal recurrence") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<std::int64_t> ps(-20, 20);
    std::uniform_int_distribution<std::int64_t> ms(2, 1000000);
    std::uniform_int_distribution<unsigned long> ns(0, 30);
    for (int iter = 0; iter < 500; ++iter) {
        const Int P(ps(rng));
        const int Q0 = (rng() & 1) ? 1 : -1;
        const unsigned long n = ns(rng);
        const Int m(ms(rng));
        const auto [un, un1] = prk::detail::lucas_u_pair(P, Q0, Int(n), m);
        const auto [en, en1] = oracle::exact_lucas_u(P, Int(Q0), n);
        CAPTURE(P);
        CAPTURE(Q0);
        CAPTURE(n);
        CAPTURE(m);
        Int rn = en % m, rn1 = en1 % m;
        if (rn < 0) rn += m;
        if (rn1 < 0) rn1 += m;
        CHECK_EQ(un, rn);
        CHECK_EQ(un1, rn1);
    }
}

TEST_CASE("Fibonacci residues, pinned values") {
    auto fib = prk::generalized_fibonacci_mod(prk::make_field(10), 3);
    CHECK_EQ(fib.f, 1);
    CHECK_EQ(fib.q, 3);
    CHECK_EQ(fib.residue, 3);
    CHECK(fib.trace_divisible);  // trace 6

    fib = prk::generalized_fibonacci_mod(prk::make_field(2), 7);
    CHECK_EQ(fib.f, 1);
    CHECK_EQ(fib.residue, 43);
    CHECK_FALSE(fib.trace_divisible);

    fib = prk::generalized_fibonacci_mod(prk::make_field(2), 13);
    CHECK_EQ(fib.f, 2);
    CHECK_EQ(fib.q, 169);
    CHECK_EQ(fib.residue, 1);  // genuine local 13th power
    CHECK_FALSE(fib.trace_divisible);

    fib = prk::generalized_fibonacci_mod(prk::make_field(2), 31);
    CHECK_EQ(fib.residue, 1);
    CHECK_FALSE(fib.trace_divisible);

    fib = prk::generalized_fibonacci_mod(prk::make_field(6), 5);
    CHECK_EQ(fib.residue, 1);
    CHECK(fib.trace_divisible);  // trace 10: residue 1 is degenerate

    fib = prk::generalized_fibonacci_mod(prk::make_field(21), 5);
    CHECK_EQ(fib.residue, 1);
    CHECK(fib.trace_divisible);  // half-integer unit, trace 5

    fib = prk::generalized_fibonacci_mod(prk::make_field(3), 7);
    CHECK_EQ(fib.f, 2);
    CHECK_EQ(fib.q, 49);
    CHECK_EQ(fib.residue, 29);

    CHECK(prk::unit_is_local_pth_power(prk::make_field(2), 13));
    CHECK_FALSE(prk::unit_is_local_pth_power(prk::make_field(2), 7));
}

TEST_CASE("Fibonacci residue domain errors") {
    CHECK_THROWS_AS(prk::generalized_fibonacci_mod(prk::make_field(-5), 3),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::generalized_fibonacci_mod(prk::make_field(10), 2),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::generalized_fibonacci_mod(prk::make_field(10), 5),
                    prk::domain_error);  // ramified
    CHECK_THROWS_AS(prk::generalized_fibonacci_mod(prk::make_field(10), 9),
                    prk::domain_error);
}

TEST_CASE("Fibonacci residues match the exact symbolic quotient") {
    for (std::int64_t d = 2; d <= 50; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        for (const std::int64_t p : {3, 5, 7, 11, 13}) {
            if (K.discriminant % p == 0) continue;
            CAPTURE(d);
            CAPTURE(p);
            const auto fib = prk::generalized_fibonacci_mod(K, Int(p));
            CHECK_EQ(fib.residue, exact_fibonacci_mod(K, p));
        }
    }
    // one larger split case
    const auto K = prk::make_field(290);
    CHECK_EQ(prk::generalized_fibonacci_mod(K, 17).residue,
             exact_fibonacci_mod(K, 17));
}

TEST_CASE("residue-1 census over d <= 200, p <= 100") {
    // Counts frozen from an exact symbolic-power sweep: 205 (d, p) pairs with
    // residue 1, of which 102 have p coprime to the unit trace.
    long residue_one = 0, genuine = 0;
    std::set<std::pair<std::int64_t, std::int64_t>> genuine_pairs;
    const auto primes = prk::primes_upto(100);
    for (std::int64_t d = 2; d <= 200; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        for (const auto p : primes) {
            if (p == 2) continue;
            if (K.discriminant % p == 0) continue;
            const auto fib = prk::generalized_fibonacci_mod(K, Int(p));
            if (fib.residue != 1) continue;
            ++residue_one;
            if (!fib.trace_divisible) {
                ++genuine;
                genuine_pairs.insert({d, p});
            }
        }
    }
    CHECK_EQ(residue_one, 205);
    CHECK_EQ(genuine, 102);
    const std::vector<std::pair<std::int64_t, std::int64_t>> spot = {
        {2, 13}, {2, 31}, {6, 7},  {19, 79}, {22, 43},
        {22, 73}, {23, 7}, {29, 3}, {29, 11}};
    for (const auto& pr : spot) {
        CAPTURE(pr.first);
        CAPTURE(pr.second);
        CHECK(genuine_pairs.count(pr));
    }
}

TEST_CASE("family congruence: d = p^2 + 1 gives residue p") {
    const std::map<std::int64_t, std::int64_t> expected_h = {
        {3, 2},  {5, 2},  {11, 2}, {13, 4}, {17, 4}, {19, 2},
        {23, 4}, {29, 6}, {31, 4}, {37, 4}, {47, 8}};
    for (const auto& [p, h] : expected_h) {
        const Int d = Int(p) * p + 1;
        REQUIRE_EQ(prk::squarefree_decompose(d).second, 1);
        const auto K = prk::make_field(d);
        const auto fib = prk::generalized_fibonacci_mod(K, Int(p));
        CAPTURE(p);
        CHECK_EQ(fib.f, 1);
        CHECK_EQ(fib.residue, Int(p));
        CHECK(fib.trace_divisible);  // trace 2p
        CHECK_EQ(prk::h_real_analytic(K), Int(h));
        CHECK(Int(h) < Int(p));
    }
}

TEST_CASE("real p-rationality verdicts, pinned") {
    auto v = prk::is_p_rational_real(prk::make_field(290), 17);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE(v.h.has_value());
    CHECK_EQ(*v.h, 4);
    REQUIRE(v.residue.has_value());
    CHECK_EQ(*v.residue, 17);

    v = prk::is_p_rational_real(prk::make_field(10), 3);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    bool advisory = false;
    for (const auto& r : v.reasons) advisory |= (r.tag == "advisory");
    CHECK(advisory);  // p = 3 is outside the stated range

    // ramified p: an unsupported verdict, not an exception
    v = prk::is_p_rational_real(prk::make_field(10), 5);
    CHECK_EQ(v.outcome, prk::Outcome::unsupported);
    CHECK_FALSE(v.h.has_value());

    v = prk::is_p_rational_real(prk::make_field(10), 2);
    CHECK_EQ(v.outcome, prk::Outcome::unsupported);

    // degenerate residue 1 (p divides the trace): conservative refusal,
    // flagged by an advisory
    v = prk::is_p_rational_real(prk::make_field(21), 5);
    CHECK_EQ(v.outcome, prk::Outcome::not_rational);
    advisory = false;
    for (const auto& r : v.reasons) advisory |= (r.tag == "advisory");
    CHECK(advisory);

    // genuine local p-th power
    v = prk::is_p_rational_real(prk::make_field(2), 13);
    CHECK_EQ(v.outcome, prk::Outcome::not_rational);

    CHECK_THROWS_AS(prk::is_p_rational_real(prk::make_field(-5), 3),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::is_p_rational_real(prk::make_field(10), 6),
                    prk::domain_error);
}

TEST_CASE("imaginary p-rationality verdicts, pinned") {
    auto v = prk::is_p_rational_imaginary(prk::make_field(-22), 23);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE(v.h.has_value());
    CHECK_EQ(*v.h, 2);

    v = prk::is_p_rational_imaginary(prk::make_field(-47), 5);
    CHECK_EQ(v.outcome, prk::Outcome::unknown);  // 5 | h = 5
    CHECK_EQ(*v.h, 5);

    v = prk::is_p_rational_imaginary(prk::make_field(-5), 3);
    CHECK_EQ(v.outcome, prk::Outcome::unsupported);

    CHECK_THROWS_AS(prk::is_p_rational_imaginary(prk::make_field(10), 5),
                    prk::domain_error);
}

TEST_CASE("verdicts are deterministic") {
    for (int iter = 0; iter < 2; ++iter) {
        const auto a = prk::is_p_rational_real(prk::make_field(290), 17);
        const auto b = prk::is_p_rational_real(prk::make_field(290), 17);
        CHECK_EQ(a.outcome, b.outcome);
        CHECK_EQ(*a.h, *b.h);
        CHECK_EQ(*a.residue, *b.residue);
        REQUIRE_EQ(a.reasons.size(), b.reasons.size());
        for (std::size_t i = 0; i < a.reasons.size(); ++i) {
            CHECK_EQ(a.reasons[i].tag, b.reasons[i].tag);
            CHECK_EQ(a.reasons[i].detail, b.reasons[i].detail);
        }
    }
}

TEST_CASE("quadratic subfield radicands") {
    CHECK_EQ(prk::quadratic_subfield_radicands({15, 35}),
             std::vector<Int>{Int(15), Int(35), Int(21)});
    CHECK_EQ(prk::quadratic_subfield_radicands({-1, 3}),
             std::vector<Int>{Int(-1), Int(3), Int(-3)});
    CHECK_EQ(prk::quadratic_subfield_radicands({10, 26}),
             std::vector<Int>{Int(10), Int(26), Int(65)});
    CHECK_EQ(prk::quadratic_subfield_radicands({2, 3, 5}),
             std::vector<Int>(
                 {Int(2), Int(3), Int(6), Int(5), Int(10), Int(15), Int(30)}));
    CHECK_THROWS_AS(prk::quadratic_subfield_radicands({}), prk::domain_error);
    CHECK_THROWS_AS(prk::quadratic_subfield_radicands({4}), prk::domain_error);
    CHECK_THROWS_AS(prk::quadratic_subfield_radicands({0}), prk::domain_error);
    CHECK_THROWS_AS(prk::quadratic_subfield_radicands({2, 8}),
                    prk::domain_error);
    // 6 * 10 * 15 = 900 is a square: not multiplicatively independent
    CHECK_THROWS_AS(prk::quadratic_subfield_radicands({6, 10, 15}),
                    prk::domain_error);
}

TEST_CASE("biquadratic family K_alpha") {
    auto v = prk::check_K_alpha(5, 1);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE_EQ(v.subfields.size(), 3);
    CHECK_EQ(v.subfields[0].radicand, 35);
    CHECK_EQ(v.subfields[1].radicand, 15);
    CHECK_EQ(v.subfields[2].radicand, 21);
    CHECK_EQ(*v.subfields[0].h, 2);
    CHECK_EQ(*v.subfields[1].h, 2);
    CHECK_EQ(*v.subfields[2].h, 1);
    CHECK(v.subfields[0].ramified);
    CHECK(v.subfields[1].ramified);
    CHECK_FALSE(v.subfields[2].ramified);
    REQUIRE(v.subfields[2].residue.has_value());
    bool premise = false;
    for (const auto& r : v.reasons) premise |= (r.tag == "premise");
    CHECK(premise);

    // certificate re-verification: reported h values recompute identically
    for (const auto& sc : v.subfields) {
        const auto K = prk::make_field(sc.radicand);
        CHECK_EQ(prk::class_number_certificate(K).h, *sc.h);
    }

    v = prk::check_K_alpha(7, 2);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE_EQ(v.subfields.size(), 3);
    CHECK_EQ(v.subfields[0].radicand, 14);
    CHECK_EQ(v.subfields[1].radicand, 42);
    CHECK_EQ(v.subfields[2].radicand, 3);
    CHECK_EQ(*v.subfields[0].h, 1);
    CHECK_EQ(*v.subfields[1].h, 2);
    CHECK_EQ(*v.subfields[2].h, 1);

    // p = 5, alpha = 17: the unramified subfield has h = 10, and 5 | 10
    v = prk::check_K_alpha(5, 17);
    CHECK_EQ(v.outcome, prk::Outcome::unknown);
    REQUIRE_EQ(v.subfields.size(), 3);
    CHECK_EQ(v.subfields[0].radicand, 7395);
    CHECK_EQ(v.subfields[1].radicand, 7055);
    CHECK_EQ(v.subfields[2].radicand, 7221);
    CHECK_EQ(*v.subfields[0].h, 16);
    CHECK_EQ(*v.subfields[1].h, 12);
    CHECK_EQ(*v.subfields[2].h, 10);
    CHECK(v.subfields[2].h_divisible);

    CHECK_THROWS_AS(prk::check_K_alpha(4, 1), prk::domain_error);
    CHECK_THROWS_AS(prk::check_K_alpha(3, 1), prk::domain_error);
    CHECK_THROWS_AS(prk::check_K_alpha(5, 10), prk::domain_error);
    CHECK_THROWS_AS(prk::check_K_alpha(5, 0), prk::domain_error);
}

TEST_CASE("imaginary multiquadratic family F_alpha") {
    auto v = prk::check_F_alpha(5, 1);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE_EQ(v.subfields.size(), 4);
    CHECK_EQ(v.subfields[0].radicand, -1);
    CHECK_EQ(v.subfields[1].radicand, -15);
    CHECK_EQ(v.subfields[2].radicand, -21);
    CHECK_EQ(v.subfields[3].radicand, -35);
    CHECK_EQ(*v.subfields[0].h, 1);
    CHECK_EQ(*v.subfields[1].h, 2);
    CHECK_EQ(*v.subfields[2].h, 4);
    CHECK_EQ(*v.subfields[3].h, 2);

    v = prk::check_F_alpha(7, 1);
    CHECK_EQ(v.outcome, prk::Outcome::rational);
    REQUIRE_EQ(v.subfields.size(), 4);
    CHECK_EQ(v.subfields[0].radicand, -1);
    CHECK_EQ(v.subfields[1].radicand, -5);
    CHECK_EQ(v.subfields[2].radicand, -7);
    CHECK_EQ(v.subfields[3].radicand, -35);
    bool premise = false;
    for (const auto& r : v.reasons) premise |= (r.tag == "premise");
    CHECK(premise);

    v = prk::check_F_alpha(3, 1);
    CHECK_EQ(v.outcome, prk::Outcome::unsupported);

    CHECK_THROWS_AS(prk::check_F_alpha(6, 1), prk::domain_error);
    CHECK_THROWS_AS(prk::check_F_alpha(5, 0), prk::domain_error);
}

}  // TEST_SUITE
