#pragma once

#include <optional>
#include <string>

#include "prk/quadfield.hpp"

namespace prk {

// Exact class number of an imaginary field by counting reduced primitive
// binary quadratic forms (a, b, c) of discriminant d_K.
Int h_imaginary_forms(const FieldDescriptor& K);

// Exact class number of an imaginary field by the finite character sum
// h = -(1/|d_K|) * sum a * (d_K|a); d_K in {-3, -4} return 1 directly.
Int h_imaginary_analytic(const FieldDescriptor& K);

// Real class number via L(1, chi) as a finite log-sine character sum and
// h = round(sqrt(d_K) L / (2 R)). The pre-rounding value must lie within
// 0.01 of an integer; on failure the evaluation is retried once at 4x
// precision and then raises precision_error.
struct RealClassData {
    Int h;
    double l_value;   // L(1, chi) actually used
    double residual;  // |pre-rounding value - h|
};
RealClassData h_real_analytic_data(const FieldDescriptor& K);
Int h_real_analytic(const FieldDescriptor& K);

// h_K <= (omega * sqrt(|d_K|) / 4pi) (log|d_K| + 3/2), imaginary fields.
double louboutin_bound(const FieldDescriptor& K);

// h_K <= sqrt(d_K)/2, real fields.
double le_bound(const FieldDescriptor& K);

// L(1, chi) <= (log d_K + kappa2)/4 with kappa2 = 2 + gamma - log(pi);
// justified only for real fields with even discriminant (2 ramified), and
// refused otherwise.
double l_upper_bound(const FieldDescriptor& K);

// The sufficient condition for h < p in the p^2+1 family:
// log(4(p^2+1))/log(16p^4+8p^2+1) + 1/log(2p^2+1+2p sqrt(p^2+1)) < 1.
bool real_inequality_check(const Int& p);

// Class number with the certificate data the reports carry.
struct ClassNumberCertificate {
    FieldDescriptor field;
    Int h;
    std::string method;  // reduced-forms | dirichlet-sum | analytic-real
    std::optional<double> bound;    // louboutin (imaginary) / le (real)
    std::optional<double> l_value;  // real case only
};
ClassNumberCertificate class_number_certificate(const FieldDescriptor& K,
                                                const std::string& method =
                                                    "auto");

}  // namespace prk
