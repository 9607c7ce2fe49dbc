#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "prk/arith.hpp"
#include "prk/prational.hpp"

namespace prk {

// Prime p found on a CRT progression, together with the congruence data
// that certifies the square divisors of p - r_i.
struct SearchResult {
    Int p;
    std::vector<std::pair<Int, Int>> shifts;  // (r_i, m_i): m_i^2 | p - r_i
    CrtPlan plan;
    long scan_steps = 0;
};

// Smallest admissible choice of `count` pairwise-coprime moduli in
// [lo, hi], each coprime to every r in rs (greedy ascending scan).
std::vector<Int> admissible_moduli(const std::vector<Int>& rs, int count,
                                   const Int& lo, const Int& hi);

// Smallest prime p <= limit with p = r_i (mod m_i^2) for all i.
SearchResult find_prime_square_divisors(const std::vector<Int>& rs,
                                        const std::vector<Int>& moduli,
                                        const Int& limit);

// Post-hoc strength of the square factors: largest A with
// min_i m_i^2 >= (log p)^A, or 0 when log log p <= 0.
double square_factor_exponent(const SearchResult& sr);

enum class ImaginaryVariant { shifted, p_multiplied };

struct ScanEntry {
    int j = 0;
    Int radicand;  // family value: -(p - j) or -p(p - j)
    Int kern;      // square-free kernel (field radicand)
    Int h;
    double louboutin = 0.0;
    bool p_divides_h = false;
    bool skipped = false;
    std::string note;
};

struct ImaginaryScanRow {
    Int p;
    std::vector<ScanEntry> entries;
    bool simultaneous = false;  // p coprime to every computed h
};

// Class numbers of the k consecutive imaginary fields attached to each
// prime in [from, to] (primes >= 5), with Louboutin bounds and p | h flags.
std::vector<ImaginaryScanRow> scan_consecutive_imaginary(
    int k, ImaginaryVariant variant, const Int& from, const Int& to,
    int jobs = 1);

struct RealFamilyEntry {
    int c = 0;      // shift: value = p^2 + c
    Int value;
    bool squarefree = false;
    bool evaluated = false;  // full verdict computed (all four square-free)
    Int h;
    Int residue;
    int f = 0;
    bool trace_divisible = false;
    Outcome outcome = Outcome::unsupported;
};

struct RealScanRow {
    Int p;
    std::array<RealFamilyEntry, 4> entries;  // c = 1, -2, 2, 4
    bool all_squarefree = false;
    bool simultaneous = false;  // all four fields p-rational
};

// Square-free screening of p^2+1, p^2-2, p^2+2, p^2+4 over odd primes in
// [from, to]; primes passing the screen get full p-rationality verdicts.
std::vector<RealScanRow> scan_real_family(const Int& from, const Int& to,
                                          int jobs = 1);

// The four family shifts, in fixture column order.
inline constexpr std::array<int, 4> kRealFamilyShifts = {1, -2, 2, 4};

}  // namespace prk
