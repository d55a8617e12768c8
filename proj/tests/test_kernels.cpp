#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunkl/kernels.hpp"

using namespace dunkl;

namespace {

// Midpoint rule in s for the λ = 1 Hilbert kernel, where (1-s²)^{λ-1} = 1.
double brute_hilbert_lambda1(double x, double t, int n) {
    double acc = 0.0, h = 2.0 / n;
    for (int i = 0; i < n; ++i) {
        double s = -1.0 + (i + 0.5) * h;
        double q = x * x + t * t - 2.0 * x * t * s;
        acc += (1.0 + s) / (q * q);
    }
    double pref = std::tgamma(1.5) * std::pow(2.0, 1.5) / std::numbers::pi;
    return pref * (x - t) * acc * h;
}

// Mass of t ↦ (τ_x P_y)(-t) against c_λ|t|^{2λ}dt, panels graded toward ±x and 0.
double poisson_mass(const DunklParam& p, double x, double y) {
    auto eng = KernelEngine::get(p);
    std::vector<Attractor> att{{x, 0.25 * y}, {-x, 0.25 * y}, {0.0, 0.25 * y}};
    double R = 200.0 * (std::abs(x) + y);
    auto breaks = graded_breakpoints(-R, R, att);
    auto f = [&](double t) { return eng->poisson(x, y, t); };
    double inner = integrate_weighted_panels(f, p.lambda(), breaks, 20);
    auto g = [&](double t) { return std::pow(t, 2.0 * p.lambda()) * (f(t) + f(-t)); };
    return p.c_lambda() * (inner + integrate_to_infinity(g, R, 20));
}

}  // namespace

TEST_CASE("Hilbert kernel against brute-force s-integration") {
    DunklParam p(1.0);
    double ref = brute_hilbert_lambda1(2.0, 1.0, 1000000);
    CHECK(hilbert_kernel(p, 2.0, 1.0) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(hilbert_kernel(p, 2.0, 1.0) == doctest::Approx(-hilbert_kernel(p, 1.0, 2.0)).epsilon(1e-13));
    CHECK(hilbert_kernel(p, 3.0, 0.5) > 0.0);
    CHECK(hilbert_kernel(p, -1.0, 2.5) == doctest::Approx(brute_hilbert_lambda1(-1.0, 2.5, 1000000)).epsilon(1e-9));
}

TEST_CASE("Hilbert kernel singular inputs") {
    DunklParam p(1.0);
    CHECK_THROWS_AS(hilbert_kernel(p, 0.0, 0.0), SingularityError);
    CHECK_THROWS_AS(hilbert_kernel(p, 1.5, 1.5), SingularityError);
    CHECK_THROWS_AS(hilbert_kernel(p, 1.5, 1.5 + 1e-9), SingularityError);
    CHECK_NOTHROW(hilbert_kernel(p, 1.5, 1.5 + 1e-6));
}

TEST_CASE("Hilbert kernel antisymmetry on a random grid") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    for (double lam : {0.3, 1.0, 2.5}) {
        DunklParam p(lam);
        for (int i = 0; i < 200; ++i) {
            double x = U(rng), t = U(rng);
            CHECK(hilbert_kernel(p, x, t) == doctest::Approx(-hilbert_kernel(p, t, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("tabulated s-integral matches the direct rules") {
    for (double lam : {0.25, 1.0, 3.0}) {
        KernelEngine e(lam);
        for (double eps : {1e-20, 1e-9, 3e-4, 0.04, 0.06, 1.0, 17.0, 1e10, 1e20})
            for (int sigma : {-1, 1}) CHECK(e.reduced(sigma, eps) == doctest::Approx(e.reduced_direct(sigma, eps)).epsilon(1e-11));
        CHECK_THROWS_AS(e.reduced_direct(1, 0.0), SingularityError);
    }
}

TEST_CASE("reduced integral closed forms") {
    // λ = 1: T_+ + T_- = 2∫_0^2 (ε+u)^{-2} du and T_+ - T_- = 2∫_0^2 (1-u)(ε+u)^{-2} du
    KernelEngine e(1.0);
    for (double eps : {1e-6, 0.01, 0.5, 4.0}) {
        double sum = 2.0 * (1.0 / eps - 1.0 / (eps + 2.0));
        double diff = 2.0 * ((1.0 + eps) * (1.0 / eps - 1.0 / (eps + 2.0)) - std::log((eps + 2.0) / eps));
        CHECK(e.reduced(1, eps) + e.reduced(-1, eps) == doctest::Approx(sum).epsilon(1e-12));
        CHECK(e.reduced(1, eps) - e.reduced(-1, eps) == doctest::Approx(diff).epsilon(1e-11));
    }
}

TEST_CASE("Poisson kernel") {
    CHECK(poisson_kernel(DunklParam(1.5), 1.0, 0.5, -2.0) > 0.0);
    CHECK_THROWS_AS(poisson_kernel(DunklParam(1.0), 1.0, 0.0, 2.0), DomainError);
    DunklParam p(1.0);
    for (double t : {-2.0, 0.3, 1.0, 4.0})
        for (double y : {0.2, 1.0}) {
            double want = 2.0 * std::sqrt(2.0 / std::numbers::pi) * y / std::pow(y * y + t * t, 2);
            CHECK(poisson_kernel(p, 0.0, y, t) == doctest::Approx(want).epsilon(1e-13));
        }
    // symmetry under (x, t) -> (-x, -t) and scaling
    DunklParam q(0.7);
    CHECK(poisson_kernel(q, 1.2, 0.3, -0.4) == doctest::Approx(poisson_kernel(q, -1.2, 0.3, 0.4)).epsilon(1e-14));
    double c = 3.0;
    CHECK(poisson_kernel(q, c * 1.2, c * 0.3, c * 0.9) ==
          doctest::Approx(std::pow(c, -(2 * 0.7 + 1)) * poisson_kernel(q, 1.2, 0.3, 0.9)).epsilon(1e-10));
}

TEST_CASE("Poisson kernel normalization") {
    // (λ=1, x=0, y=1): c_1 √(2/π) 2 ∫ t²/(1+t²)² dt = c_1 √(2/π) π = 1
    CHECK(poisson_mass(DunklParam(1.0), 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
    for (double lam : {0.5, 2.0})
        for (double x : {-1.0, 0.7})
            CHECK(std::abs(poisson_mass(DunklParam(lam), x, 0.5) - 1.0) < 1e-6);
}

TEST_CASE("conjugate Poisson kernel") {
    DunklParam p(1.0);
    CHECK(conj_poisson_kernel(p, 2.0, 1e-6, 1.0) == doctest::Approx(hilbert_kernel(p, 2.0, 1.0)).epsilon(1e-5));
    CHECK(conj_poisson_kernel(p, 2.0, 0.0, 1.0) == hilbert_kernel(p, 2.0, 1.0));
    CHECK(conj_poisson_kernel(p, 2.0, 0.3, 1.0) > 0.0);
    CHECK(conj_poisson_kernel(p, 1.7, 0.3, 1.7) == 0.0);
    CHECK_THROWS_AS(conj_poisson_kernel(p, 1.0, 0.0, 1.0), SingularityError);
}

TEST_CASE("kernel frame") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double x0 = 2.0, d0 = 0.5;
    double worst_8q = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double s = U(rng);
        double t = x0 + d0 * U(rng);
        double x = 12.0 * U(rng);
        if (std::abs(x - x0) < 4 * d0 || std::abs(x + x0) < 4 * d0) continue;
        auto f = KernelFrame::make(x, t, x0, 0.0, s);
        auto ref = KernelFrame::make(x, x0, x0, 0.0, s);
        CHECK(f.s_form >= (1 - s * s) * std::min(x * x, t * t) - 1e-12);
        CHECK(f.delta1 == doctest::Approx(f.s_form - ref.s_form).epsilon(1e-10));
        CHECK(std::abs(f.delta1) <= 3.0 * std::abs(t - x0) * std::sqrt(ref.s_form) + 1e-12);
        CHECK(std::abs(x0 + t - 2 * x * s) <= 3.0 * std::sqrt(ref.s_form) + 1e-12);
        if (x >= 0.0 || x < -2.0 * x0) worst_8q = std::max(worst_8q, std::abs(x - x0) / std::sqrt(ref.s_form));
        auto fy = KernelFrame::make(x, t, x0, 0.4, s);
        CHECK(fy.ys_form > f.s_form);
    }
    CHECK(worst_8q <= 3.0);
}

TEST_CASE("Poisson and Hilbert integrals of atoms") {
    DunklParam p(1.0);
    Atom a = make_atom(p, 1.0, Interval(2.0, 0.5), 0);
    CHECK(std::isfinite(hilbert_transform(a, p, 5.0)));
    CHECK(std::isfinite(hilbert_transform(a, p, 2.1)));
    CHECK_THROWS_AS(hilbert_transform(a, p, 2.5), SingularityError);
    // far above the support the zero-mass atom is invisible
    CHECK(std::abs(poisson_integral(a, p, {2.0, 1000.0})) < 1e-9 * std::abs(poisson_integral(a, p, {2.0, 1.0})));
    // y → 0 recovers the Hilbert transform
    for (double x : {1.0, 2.2, -3.0})
        CHECK(conj_poisson_integral(a, p, {x, 1e-7}) == doctest::Approx(hilbert_transform(a, p, x)).epsilon(1e-4));
    CHECK_THROWS_AS(poisson_integral(a, DunklParam(2.0), {1.0, 1.0}), DomainError);
}

TEST_CASE("Poisson integral of a nonnegative bump") {
    DunklParam p(0.6);
    GridFunction bump(-1.0, 2.0, [](double t) { return (t + 1) * (2 - t); });
    for (double x : {-3.0, 0.0, 0.5, 4.0}) CHECK(poisson_integral(bump, p, {x, 0.3}) > 0.0);
    GridFunction zero(-1.0, 1.0, [](double) { return 0.0; });
    CHECK(poisson_integral(zero, p, {0.2, 0.3}) == 0.0);
    CHECK(conj_poisson_integral(zero, p, {0.2, 0.3}) == 0.0);
}

TEST_CASE("small lambda recovers the classical Hilbert transform") {
    DunklParam p(1e-6);
    auto f = [](double t) { return (1 - t * t) * (1 - t * t); };
    GridFunction bump(-1.0, 1.0, f);
    const QuadRule& gl = gauss_legendre(40);
    for (double x : {-0.55, 0.3, 0.8, 1.7}) {
        // (1/π)[∫ (f(t) - f(x))/(x - t) dt + f(x) PV∫ dt/(x - t)], exact by Gauss-Legendre
        double fx = std::abs(x) < 1 ? f(x) : 0.0;
        double reg = gl.integrate([&](double t) { return (f(t) - fx) / (x - t); });
        double pv = std::abs(x) < 1 ? std::log((1 + x) / (1 - x)) : std::log((x + 1) / (x - 1));
        double want = (reg + fx * pv) / std::numbers::pi;
        if (std::abs(x) > 1) want = reg / std::numbers::pi;
        CHECK(std::abs(hilbert_transform(bump, p, x) - want) < 1e-4);
    }
}

TEST_CASE("Dunkl derivative") {
    CHECK(dunkl_derivative([](double x) { return x * x; }, DunklParam(1.0), 1.0, 1e-4) ==
          doctest::Approx(2.0).epsilon(1e-8));
    CHECK(dunkl_derivative([](double x) { return x; }, DunklParam(1.0), 2.0, 1e-3) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(dunkl_derivative([](double x) { return x * x * x; }, DunklParam(2.0), 1.0, 1e-4) ==
          doctest::Approx(7.0).epsilon(1e-7));
    CHECK_THROWS_AS(dunkl_derivative([](double x) { return x; }, DunklParam(1.0), 0.0, 1e-3), DomainError);
}

TEST_CASE("Cauchy-Riemann residual") {
    Field zero = [](double, double) { return 0.0; };
    auto r = cauchy_riemann_residual(zero, zero, DunklParam(1.0), {1.3, 0.7}, 0.01);
    CHECK(r.first == 0.0);
    CHECK(r.second == 0.0);
    CHECK_THROWS_AS(cauchy_riemann_residual(zero, zero, DunklParam(1.0), {1.3, 0.7}, 0.2), DomainError);
    CHECK_THROWS_AS(HalfPlanePoint(1.0, 0.0), DomainError);
}
