#include "prk/classnumber.hpp"

#include <cmath>

#include "prk/real.hpp"

namespace prk {

Int h_imaginary_forms(const FieldDescriptor& K) {
    if (K.real) throw domain_error("h_imaginary_forms: field must be imaginary");
    const Int absD = -K.discriminant;
    Int count = 0;
    // reduced forms: |b| <= a <= c, b^2 - 4ac = d_K, gcd(a,b,c) = 1,
    // with b >= 0 when |b| = a or a = c; count (a, +/-b, c) pairs via the
    // doubling rule below.
    Int b = mpz_fdiv_ui(absD.get_mpz_t(), 2);  // b = d_K mod 2
    for (; 3 * b * b <= absD; b += 2) {
        Int ac = (b * b + absD) / 4;
        Int a_lo = b > 1 ? b : Int(1);
        for (Int a = a_lo; a * a <= ac; ++a) {
            if (!mpz_divisible_p(ac.get_mpz_t(), a.get_mpz_t())) continue;
            Int c = ac / a;
            if (gcd(gcd(a, b), c) != 1) continue;
            count += (b == 0 || a == b || a == c) ? 1 : 2;
        }
    }
    return count;
}

Int h_imaginary_analytic(const FieldDescriptor& K) {
    if (K.real)
        throw domain_error("h_imaginary_analytic: field must be imaginary");
    if (K.discriminant == -3 || K.discriminant == -4) return 1;
    const Int absD = -K.discriminant;
    if (!absD.fits_ulong_p())
        throw unsupported_error(
            "h_imaginary_analytic: discriminant too large for the finite sum");
    unsigned long n = absD.get_ui();
    Int sum = 0;
    for (unsigned long a = 1; a < n; ++a) {
        int chi = mpz_kronecker_ui(K.discriminant.get_mpz_t(), a);
        if (chi == 1)
            sum += a;
        else if (chi == -1)
            sum -= a;
    }
    Int h = -sum / absD;
    if (h * absD != -sum)
        throw computation_error(
            "h_imaginary_analytic: character sum not divisible by |d_K|");
    return h;
}

namespace {

// sum over 0 < a < d_K of (d_K|a) * log(sin(pi a / d_K))
Real log_sine_character_sum(const Int& dK, mpfr_prec_t prec) {
    unsigned long n = dK.get_ui();
    Real pi = Real::pi(prec);
    mpfr_t angle, term, acc;
    mpfr_init2(angle, prec);
    mpfr_init2(term, prec);
    mpfr_init2(acc, prec);
    mpfr_set_zero(acc, 1);
    for (unsigned long a = 1; a < n; ++a) {
        int chi = mpz_kronecker_ui(dK.get_mpz_t(), a);
        if (chi == 0) continue;
        mpfr_mul_ui(angle, pi.raw(), a, MPFR_RNDN);
        mpfr_div_ui(angle, angle, n, MPFR_RNDN);
        mpfr_sin(term, angle, MPFR_RNDN);
        mpfr_log(term, term, MPFR_RNDN);
        if (chi == 1)
            mpfr_add(acc, acc, term, MPFR_RNDN);
        else
            mpfr_sub(acc, acc, term, MPFR_RNDN);
    }
    Real out(prec);
    mpfr_set(out.raw(), acc, MPFR_RNDN);
    mpfr_clear(angle);
    mpfr_clear(term);
    mpfr_clear(acc);
    return out;
}

struct RealAttempt {
    Int h;
    double l_value;
    double residual;
};

RealAttempt h_real_attempt(const FieldDescriptor& K, mpfr_prec_t prec) {
    FundamentalUnit eps = fundamental_unit(K);
    Real reg = log((Real::of(eps.t, prec) +
                    Real::of(eps.u, prec) * sqrt(Real::of(K.radicand, prec))) /
                   long(eps.sigma));
    Real acc = log_sine_character_sum(K.discriminant, prec);
    // L = -acc / sqrt(d_K); h_pre = sqrt(d_K) L / (2R) = -acc / (2R)
    Real l_value = -acc / sqrt(Real::of(K.discriminant, prec));
    Real h_pre = -acc / (reg * 2L);
    auto [h, residual] = h_pre.round_to_integer();
    return RealAttempt{h, l_value.to_double(), residual};
}

}  // namespace

RealClassData h_real_analytic_data(const FieldDescriptor& K) {
    if (!K.real) throw domain_error("h_real_analytic: field must be real");
    if (!K.discriminant.fits_ulong_p())
        throw unsupported_error(
            "h_real_analytic: discriminant too large for the finite sum");
    constexpr double kTolerance = 0.01;
    mpfr_prec_t prec = default_precision();
    RealAttempt att = h_real_attempt(K, prec);
    if (att.residual >= kTolerance) {
        att = h_real_attempt(K, prec * 4);  // one escalation step
        if (att.residual >= kTolerance)
            throw precision_error(
                "h_real_analytic: value did not round to an integer within "
                "0.01 after precision escalation");
    }
    if (att.h < 1)
        throw computation_error("h_real_analytic: nonpositive class number");
    return RealClassData{att.h, att.l_value, att.residual};
}

Int h_real_analytic(const FieldDescriptor& K) {
    return h_real_analytic_data(K).h;
}

double louboutin_bound(const FieldDescriptor& K) {
    if (K.real) throw domain_error("louboutin_bound: field must be imaginary");
    mpfr_prec_t prec = default_precision();
    Real absD = Real::of(-K.discriminant, prec);
    Real val = (Real::of(long(K.omega), prec) * sqrt(absD) /
                (Real::pi(prec) * 4L)) *
               (log(absD) + Real::of(1.5, prec));
    return val.to_double();
}

double le_bound(const FieldDescriptor& K) {
    if (!K.real) throw domain_error("le_bound: field must be real");
    return sqrt(Real::of(K.discriminant)).to_double() / 2.0;
}

double l_upper_bound(const FieldDescriptor& K) {
    if (!K.real)
        throw domain_error("l_upper_bound: field must be real");
    if (mpz_odd_p(K.discriminant.get_mpz_t()))
        throw domain_error(
            "l_upper_bound: requires even discriminant (2 ramified)");
    mpfr_prec_t prec = default_precision();
    Real kappa2 = Real::of(2L, prec) + Real::euler_gamma(prec) -
                  log(Real::pi(prec));
    Real val = (log(Real::of(K.discriminant, prec)) + kappa2) / 4L;
    return val.to_double();
}

bool real_inequality_check(const Int& p) {
    if (p < 3 || !is_prime(p))
        throw domain_error("real_inequality_check: p must be a prime >= 3");
    Int d = p * p + 1;
    if (squarefree_decompose(d).second != 1)
        throw domain_error("real_inequality_check: p^2 + 1 must be square-free");
    double pd = p.get_d();
    // log(16p^4+8p^2+1) = 2 log(4p^2+1); log(2p^2+1+2p sqrt(p^2+1)) =
    // 2 log(p + sqrt(p^2+1)); both stay exactly representable forms.
    double term1 =
        std::log(4.0 * (pd * pd + 1.0)) / (2.0 * std::log(4.0 * pd * pd + 1.0));
    double term2 = 1.0 / (2.0 * std::log(pd + std::sqrt(pd * pd + 1.0)));
    return term1 + term2 < 1.0;
}

ClassNumberCertificate class_number_certificate(const FieldDescriptor& K,
                                                const std::string& method) {
    ClassNumberCertificate cert;
    cert.field = K;
    if (!K.real) {
        if (method == "analytic") {
            cert.method = "dirichlet-sum";
            cert.h = h_imaginary_analytic(K);
        } else if (method == "auto" || method == "forms") {
            cert.method = "reduced-forms";
            cert.h = h_imaginary_forms(K);
        } else {
            throw domain_error("class_number_certificate: unknown method " +
                               method);
        }
        cert.bound = louboutin_bound(K);
    } else {
        if (method != "auto" && method != "analytic")
            throw domain_error(
                "class_number_certificate: real fields use the analytic "
                "method");
        RealClassData data = h_real_analytic_data(K);
        cert.method = "analytic-real";
        cert.h = data.h;
        cert.l_value = data.l_value;
        cert.bound = le_bound(K);
    }
    if (cert.bound && Real::of(cert.h) > Real::of(*cert.bound))
        throw computation_error(
            "class_number_certificate: bound violated by exact value");
    return cert;
}

}  // namespace prk
