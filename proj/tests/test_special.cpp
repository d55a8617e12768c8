#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dunkl/special.hpp"

using namespace dunkl;

TEST_CASE("gamma at integers and half-integers") {
    CHECK(dunkl::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(dunkl::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(dunkl::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    CHECK_THROWS_AS(dunkl::gamma(0.0), DomainError);
    CHECK_THROWS_AS(dunkl::gamma(-1.5), DomainError);
}

TEST_CASE("gamma matches std::tgamma on [0.1, 50]") {
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        double x = 0.1 + (50.0 - 0.1) * i / 500.0;
        worst = std::max(worst, std::abs(dunkl::gamma(x) / std::tgamma(x) - 1.0));
    }
    CHECK(worst < 1e-13);
    CHECK(log_gamma(30.5) == doctest::Approx(std::lgamma(30.5)).epsilon(1e-14));
}

TEST_CASE("normalized Bessel closed forms") {
    CHECK(bessel_j_norm(-0.5, 2.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(std::abs(bessel_j_norm(0.5, std::numbers::pi)) < 1e-15);
    CHECK(bessel_j_norm(1.7, 0.0) == 1.0);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double z = 0.1 + 19.9 * i / 400.0;
        double j32 = 3.0 * (std::sin(z) - z * std::cos(z)) / (z * z * z);
        double rel_cos = std::abs(bessel_j_norm(-0.5, z) - std::cos(z)) / std::abs(std::cos(z));
        double rel_sin = std::abs(bessel_j_norm(0.5, z) - std::sin(z) / z) / std::abs(std::sin(z) / z);
        double rel_32 = std::abs(bessel_j_norm(1.5, z) - j32) / std::abs(j32);
        worst = std::max({worst, rel_cos, rel_sin, rel_32});
    }
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(bessel_j_norm(-0.6, 1.0), DomainError);
}

TEST_CASE("Bessel is even and continuous across the asymptotic switch") {
    CHECK(bessel_j_norm(1.3, -7.0) == bessel_j_norm(1.3, 7.0));
    // j_{1/2}(z) = sin z / z on both sides of 25
    for (double z : {24.9, 25.0, 25.1, 30.0, 60.0}) {
        CHECK(bessel_j_norm(0.5, z) == doctest::Approx(std::sin(z) / z).epsilon(1e-12));
        CHECK(bessel_j_norm(-0.5, z) == doctest::Approx(std::cos(z)).epsilon(1e-12));
    }
}

TEST_CASE("Dunkl kernel values") {
    auto e = dunkl_kernel(DunklParam(1.0), 1.0);
    CHECK(e.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
    CHECK(e.imag() == doctest::Approx(std::sin(1.0) - std::cos(1.0)).epsilon(1e-13));
    auto one = dunkl_kernel(DunklParam(2.0), 0.0);
    CHECK(one.real() == 1.0);
    CHECK(one.imag() == 0.0);
    auto classical = dunkl_kernel(DunklParam::test_mode(0.0), 1.0);
    CHECK(std::abs(classical - std::polar(1.0, 1.0)) < 1e-14);
}

TEST_CASE("Dunkl kernel conjugate symmetry and small-lambda limit") {
    DunklParam p(0.75);
    for (double z : {0.3, 2.0, 11.0}) CHECK(std::abs(dunkl_kernel(p, -z) - std::conj(dunkl_kernel(p, z))) < 1e-15);
    DunklParam tiny = DunklParam::test_mode(1e-8);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double z = -10.0 + 20.0 * i / 200.0;
        worst = std::max(worst, std::abs(dunkl_kernel(tiny, z) - std::polar(1.0, z)));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("normalization constant") {
    CHECK(dunkl_constant(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(dunkl_constant(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-15));
    CHECK(dunkl_constant(1.0) == doctest::Approx(1.0 / (std::pow(2.0, 1.5) * std::tgamma(1.5))).epsilon(1e-15));
    CHECK_THROWS_AS(dunkl_constant(-0.1), DomainError);
    CHECK(DunklParam(1.0).c_lambda() == dunkl_constant(1.0));
}

TEST_CASE("DunklParam validation") {
    CHECK_THROWS_AS(DunklParam(-1.0), DomainError);
    CHECK_THROWS_AS(DunklParam(0.0), DomainError);
    CHECK(DunklParam::test_mode(0.0).is_classical());
    CHECK_THROWS_AS(DunklParam::test_mode(0.0).require_positive("x"), DomainError);
}
