#include "prk/search.hpp"

#include <cmath>

#include "prk/classnumber.hpp"
#include "prk/errors.hpp"
#include "prk/parallel.hpp"
#include "prk/quadfield.hpp"

namespace prk {

std::vector<Int> admissible_moduli(const std::vector<Int>& rs, int count,
                                   const Int& lo, const Int& hi) {
    if (count < 1) {
        throw domain_error("admissible_moduli: count must be >= 1");
    }
    if (lo < 2 || hi < lo) {
        throw domain_error("admissible_moduli: window must satisfy "
                           "2 <= lo <= hi");
    }
    std::vector<Int> chosen;
    Int g;
    long examined = 0;
    for (Int m = lo; m <= hi; ++m) {
        ++examined;
        bool ok = true;
        for (const Int& r : rs) {
            mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), r.get_mpz_t());
            if (g != 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            for (const Int& c : chosen) {
                mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), c.get_mpz_t());
                if (g != 1) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) {
            chosen.push_back(m);
            if (static_cast<int>(chosen.size()) == count) return chosen;
        }
    }
    throw search_exhausted("admissible_moduli: window [" + lo.get_str() +
                               ", " + hi.get_str() + "] exhausted with " +
                               std::to_string(chosen.size()) + " of " +
                               std::to_string(count) + " moduli found",
                           examined);
}

SearchResult find_prime_square_divisors(const std::vector<Int>& rs,
                                        const std::vector<Int>& moduli,
                                        const Int& limit) {
    if (rs.empty() || rs.size() != moduli.size()) {
        throw domain_error("find_prime_square_divisors: need equally many "
                           "shifts and moduli, at least one of each");
    }
    if (limit < 2) {
        throw domain_error("find_prime_square_divisors: limit must be >= 2");
    }
    std::vector<std::pair<Int, Int>> pairs;
    pairs.reserve(rs.size());
    for (size_t i = 0; i < rs.size(); ++i) {
        if (moduli[i] < 1) {
            throw domain_error("find_prime_square_divisors: moduli must be "
                               "positive");
        }
        const Int m2 = moduli[i] * moduli[i];
        Int r = rs[i] % m2;
        if (r < 0) r += m2;
        pairs.emplace_back(r, m2);
    }
    SearchResult sr;
    sr.plan = crt_combine(pairs);  // rejects incompatible congruences
    for (size_t i = 0; i < rs.size(); ++i) {
        sr.shifts.emplace_back(rs[i], moduli[i]);
    }

    const Int& D = sr.plan.combined_modulus;
    for (Int cand = sr.plan.combined_residue; cand <= limit; cand += D) {
        ++sr.scan_steps;
        if (is_prime(cand)) {
            sr.p = cand;
            return sr;
        }
        if (D == 1) break;  // degenerate all-trivial moduli
    }
    throw search_exhausted(
        "no prime <= " + limit.get_str() + " on the progression " +
            sr.plan.combined_residue.get_str() + " mod " + D.get_str(),
        sr.scan_steps);
}

double square_factor_exponent(const SearchResult& sr) {
    if (sr.shifts.empty() || sr.p < 3) return 0.0;
    Int min_m2 = sr.shifts.front().second * sr.shifts.front().second;
    for (const auto& [r, m] : sr.shifts) {
        (void)r;
        if (m * m < min_m2) min_m2 = m * m;
    }
    const double logp = std::log(mpz_get_d(sr.p.get_mpz_t()));
    if (logp <= 1.0 || min_m2 < 2) return 0.0;
    return std::log(mpz_get_d(min_m2.get_mpz_t())) / std::log(logp);
}

namespace {

ImaginaryScanRow scan_one_imaginary(const Int& p, int k,
                                    ImaginaryVariant variant) {
    ImaginaryScanRow row;
    row.p = p;
    bool all_coprime = true;
    for (int j = 1; j <= k; ++j) {
        ScanEntry e;
        e.j = j;
        e.radicand = (variant == ImaginaryVariant::shifted)
                         ? Int(-(p - j))
                         : Int(-p * (p - j));
        if (e.radicand == 0) {
            e.skipped = true;
            e.note = "degenerate shift j = p";
            row.entries.push_back(e);
            continue;
        }
        e.kern = squarefree_kernel(e.radicand);
        if (e.kern == 1) {
            e.skipped = true;
            e.note = "radicand is a perfect square";
            row.entries.push_back(e);
            continue;
        }
        if (e.kern > 0) {
            e.skipped = true;
            e.note = "positive radicand outside the imaginary family";
            row.entries.push_back(e);
            continue;
        }
        const FieldDescriptor K = make_field(e.kern);
        e.h = h_imaginary_forms(K);
        e.louboutin = louboutin_bound(K);
        if (mpz_get_d(e.h.get_mpz_t()) > e.louboutin) {
            throw computation_error("class number exceeds its Louboutin "
                                    "bound for radicand " + e.kern.get_str());
        }
        e.p_divides_h =
            mpz_divisible_p(e.h.get_mpz_t(), p.get_mpz_t()) != 0;
        if (e.p_divides_h) all_coprime = false;
        row.entries.push_back(e);
    }
    row.simultaneous = all_coprime;
    return row;
}

RealScanRow scan_one_real(const Int& p) {
    RealScanRow row;
    row.p = p;
    bool all_sf = true;
    for (size_t i = 0; i < kRealFamilyShifts.size(); ++i) {
        RealFamilyEntry e;
        e.c = kRealFamilyShifts[i];
        e.value = p * p + e.c;
        const auto [kern, square_part] = squarefree_decompose(e.value);
        (void)kern;
        e.squarefree = (square_part == 1);
        if (!e.squarefree) all_sf = false;
        row.entries[i] = e;
    }
    row.all_squarefree = all_sf;
    if (!all_sf) return row;

    bool all_rational = true;
    for (auto& e : row.entries) {
        const FieldDescriptor K = make_field(e.value);
        const ClassNumberCertificate cert = class_number_certificate(K);
        const FibonacciResidue fib = generalized_fibonacci_mod(K, p);
        e.evaluated = true;
        e.h = cert.h;
        e.residue = fib.residue;
        e.f = fib.f;
        e.trace_divisible = fib.trace_divisible;
        const bool h_div =
            mpz_divisible_p(cert.h.get_mpz_t(), p.get_mpz_t()) != 0;
        e.outcome = (!h_div && fib.residue != 1) ? Outcome::rational
                                                 : Outcome::not_rational;
        if (e.outcome != Outcome::rational) all_rational = false;
    }
    row.simultaneous = all_rational;
    return row;
}

std::vector<Int> primes_in_range(const Int& from, const Int& to,
                                 const Int& floor_p) {
    if (from > to) {
        throw domain_error("scan range requires from <= to");
    }
    if (to > 100000000) {
        throw unsupported_error("scan range upper end above 10^8");
    }
    std::vector<Int> ps;
    const auto sieve = primes_upto(static_cast<long>(to.get_si()));
    for (uint32_t q : sieve) {
        if (q >= floor_p && q >= from) ps.push_back(Int(q));
    }
    return ps;
}

}  // namespace

std::vector<ImaginaryScanRow> scan_consecutive_imaginary(
    int k, ImaginaryVariant variant, const Int& from, const Int& to,
    int jobs) {
    if (k < 1) {
        throw domain_error("scan_consecutive_imaginary: k must be >= 1");
    }
    const std::vector<Int> ps = primes_in_range(from, to, 5);
    return parallel_map(
        ps, [&](const Int& p) { return scan_one_imaginary(p, k, variant); },
        jobs);
}

std::vector<RealScanRow> scan_real_family(const Int& from, const Int& to,
                                          int jobs) {
    const std::vector<Int> ps = primes_in_range(from, to, 3);
    return parallel_map(ps, [](const Int& p) { return scan_one_real(p); },
                        jobs);
}

}  // namespace prk
