#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "prk/classnumber.hpp"

using prk::Int;

TEST_SUITE("classnumber") {

TEST_CASE("imaginary class numbers, pinned values") {
    const std::pair<std::int64_t, std::int64_t> cases[] = {
        {-1, 1},  {-2, 1},  {-3, 1},  {-5, 2},  {-6, 2},  {-7, 1},
        {-11, 1}, {-19, 1}, {-21, 4}, {-22, 2}, {-42, 4}, {-43, 1},
        {-47, 5}, {-67, 1}, {-163, 1}};
    for (const auto& [d, h] : cases) {
        const auto K = prk::make_field(Int(d));
        CAPTURE(d);
        CHECK_EQ(prk::h_imaginary_forms(K), Int(h));
        CHECK_EQ(prk::h_imaginary_analytic(K), Int(h));
    }
    CHECK_THROWS_AS(prk::h_imaginary_forms(prk::make_field(10)),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::h_imaginary_analytic(prk::make_field(10)),
                    prk::domain_error);
}

TEST_CASE("reduced-form and character-sum class numbers agree on a sweep") {
    for (std::int64_t d = -1; d >= -2000; --d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        CAPTURE(d);
        CHECK_EQ(prk::h_imaginary_forms(K), prk::h_imaginary_analytic(K));
    }
}

TEST_CASE("real class numbers, pinned values") {
    const std::pair<std::int64_t, std::int64_t> cases[] = {
        {2, 1},   {3, 1},   {5, 1},   {7, 1},   {10, 2},  {11, 1},
        {13, 1},  {15, 2},  {21, 1},  {35, 2},  {79, 3},
        {287, 2}, {290, 4}, {291, 4}, {293, 1}};
    for (const auto& [d, h] : cases) {
        CAPTURE(d);
        CHECK_EQ(prk::h_real_analytic(prk::make_field(Int(d))), Int(h));
    }
    CHECK_THROWS_AS(prk::h_real_analytic(prk::make_field(-5)),
                    prk::domain_error);
}

TEST_CASE("real analytic data: L-value and rounding residual") {
    const auto data = prk::h_real_analytic_data(prk::make_field(10));
    CHECK_EQ(data.h, 2);
    CHECK_EQ(data.l_value, doctest::Approx(1.1500872).epsilon(1e-5));
    CHECK(data.residual < 0.01);
}

TEST_CASE("real class numbers match the form-cycle count up to 200") {
    for (std::int64_t d = 2; d <= 200; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        CAPTURE(d);
        CHECK_EQ(prk::h_real_analytic(prk::make_field(Int(d))),
                 Int(oracle::h_real_cycles(d)));
    }
}

TEST_CASE("real rounding residual stays small on a sweep") {
    for (std::int64_t d = 2; d <= 500; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto data = prk::h_real_analytic_data(prk::make_field(Int(d)));
        CAPTURE(d);
        CHECK(data.residual < 0.01);
        CHECK(data.h >= 1);
        CHECK(data.l_value > 0.0);
    }
}

TEST_CASE("louboutin bound: pinned values and dominance") {
    CHECK_EQ(prk::louboutin_bound(prk::make_field(-22)),
             doctest::Approx(8.92424).epsilon(1e-4));
    CHECK_EQ(prk::louboutin_bound(prk::make_field(-3)),
             doctest::Approx(2.14903).epsilon(1e-4));
    CHECK_THROWS_AS(prk::louboutin_bound(prk::make_field(10)),
                    prk::domain_error);
    for (std::int64_t d = -1; d >= -2000; --d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        CAPTURE(d);
        CHECK(prk::h_imaginary_forms(K).get_d() <= prk::louboutin_bound(K));
    }
}

TEST_CASE("le bound: pinned values and dominance") {
    CHECK_EQ(prk::le_bound(prk::make_field(10)),
             doctest::Approx(3.1622777).epsilon(1e-6));
    CHECK_EQ(prk::le_bound(prk::make_field(5)),
             doctest::Approx(1.1180340).epsilon(1e-6));
    CHECK_THROWS_AS(prk::le_bound(prk::make_field(-5)), prk::domain_error);
    for (std::int64_t d = 2; d <= 500; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        CAPTURE(d);
        CHECK(prk::h_real_analytic(K).get_d() <= prk::le_bound(K));
    }
}

TEST_CASE("L upper bound: pinned values, dominance, domain") {
    CHECK_EQ(prk::l_upper_bound(prk::make_field(10)),
             doctest::Approx(1.280341).epsilon(1e-4));
    CHECK_EQ(prk::l_upper_bound(prk::make_field(290)),
             doctest::Approx(2.122165).epsilon(1e-4));
    // odd discriminant (2 unramified) and imaginary fields are refused
    CHECK_THROWS_AS(prk::l_upper_bound(prk::make_field(5)), prk::domain_error);
    CHECK_THROWS_AS(prk::l_upper_bound(prk::make_field(-6)),
                    prk::domain_error);
    for (std::int64_t d = 2; d <= 500; ++d) {
        if (!oracle::is_squarefree_i64(d)) continue;
        const auto K = prk::make_field(Int(d));
        if (K.discriminant % 2 != 0) continue;
        const auto data = prk::h_real_analytic_data(K);
        CAPTURE(d);
        CHECK(data.l_value <= prk::l_upper_bound(K) + 1e-9);
    }
}

TEST_CASE("real inequality check") {
    CHECK(prk::real_inequality_check(3));
    CHECK(prk::real_inequality_check(5));
    CHECK(prk::real_inequality_check(9973));
    // p^2 + 1 not square-free: 50 = 2 * 5^2, 1682 = 2 * 29^2
    CHECK_THROWS_AS(prk::real_inequality_check(7), prk::domain_error);
    CHECK_THROWS_AS(prk::real_inequality_check(41), prk::domain_error);
    CHECK_THROWS_AS(prk::real_inequality_check(2), prk::domain_error);
    CHECK_THROWS_AS(prk::real_inequality_check(9), prk::domain_error);
}

TEST_CASE("class number certificates") {
    auto cert = prk::class_number_certificate(prk::make_field(-22));
    CHECK_EQ(cert.h, 2);
    CHECK_EQ(cert.method, "reduced-forms");
    REQUIRE(cert.bound.has_value());
    CHECK_EQ(*cert.bound, doctest::Approx(8.92424).epsilon(1e-4));
    CHECK_FALSE(cert.l_value.has_value());

    cert = prk::class_number_certificate(prk::make_field(-22), "analytic");
    CHECK_EQ(cert.h, 2);
    CHECK_EQ(cert.method, "dirichlet-sum");

    cert = prk::class_number_certificate(prk::make_field(290));
    CHECK_EQ(cert.h, 4);
    CHECK_EQ(cert.method, "analytic-real");
    REQUIRE(cert.l_value.has_value());
    REQUIRE(cert.bound.has_value());
    CHECK(cert.h.get_d() <= *cert.bound);

    CHECK_THROWS_AS(prk::class_number_certificate(prk::make_field(10), "forms"),
                    prk::domain_error);
    CHECK_THROWS_AS(prk::class_number_certificate(prk::make_field(-22), "xyz"),
                    prk::domain_error);
}

}  // TEST_SUITE
