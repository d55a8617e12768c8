#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dunkl/transform.hpp"

using namespace dunkl;

namespace {

GridFunction gaussian() {
    return GridFunction(-12.0, 12.0, [](double x) { return std::exp(-0.5 * x * x); }, "gaussian");
}

GridFunction bump(double a = 3.0, double shift = 0.0) {
    return GridFunction(shift - a, shift + a, [a, shift](double x) {
        double u = (x - shift) / a;
        return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    });
}

// exp(-a(x - c)²) cut at 12/√a around c
GridFunction shifted_gaussian(double c, double a) {
    double w = 12.0 / std::sqrt(a);
    return GridFunction(c - w, c + w, [c, a](double x) { return std::exp(-a * (x - c) * (x - c)); });
}

// c_λ ∫ f(x) j_{λ-1/2}(xξ)|x|^{2λ} dx for even f, composite Simpson on a fine grid
double even_transform_oracle(const DunklParam& p, double (*f)(double), double L, double xi) {
    const int n = 20000;
    double h = L / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        double x = i * h;
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(x) * bessel_j_norm(p.lambda() - 0.5, x * xi) * std::pow(x, 2.0 * p.lambda());
    }
    return 2.0 * p.c_lambda() * acc * h / 3.0;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

}  // namespace

TEST_CASE("transform of zero and of even functions") {
    DunklParam p(1.0);
    auto xi = linspace(-5.0, 5.0, 11);
    auto z = dunkl_transform(GridFunction(-1.0, 1.0, [](double) { return 0.0; }), p, xi);
    for (auto v : z.values) CHECK(v == std::complex<double>{});
    auto g = dunkl_transform(bump(1.5), DunklParam(0.4), xi);
    for (auto v : g.values) CHECK(std::abs(v.imag()) < 1e-10);
    CHECK_THROWS_AS(dunkl_transform(GridFunction(0.0, INFINITY, [](double) { return 1.0; }), p, xi), UnsupportedInput);
}

TEST_CASE("Gaussian is self-reciprocal") {
    DunklParam p(1.0);
    auto xi = linspace(0.0, 4.0, 41);
    auto F = dunkl_transform(gaussian(), p, xi);
    CHECK_FALSE(F.flagged);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        CHECK(std::abs(F.values[i] - std::exp(-0.5 * xi[i] * xi[i])) < 1e-6);
        double oracle = even_transform_oracle(p, [](double x) { return std::exp(-0.5 * x * x); }, 12.0, xi[i]);
        CHECK(std::abs(F.values[i].real() - oracle) < 1e-9);
    }
}

TEST_CASE("conjugate symmetry and linearity") {
    DunklParam p(0.8);
    GridFunction f(0.5, 2.0, [](double x) { return (x - 0.5) * (2.0 - x) * std::exp(x); });
    GridFunction g(-1.0, 1.5, [](double x) { return std::cos(x); });
    GridFunction h(-1.0, 2.0, [&](double x) { return 2.0 * f(x) - 3.0 * g(x); });
    std::vector<double> xi{0.3, 1.7, 6.0};
    std::vector<double> mxi{-6.0, -1.7, -0.3};
    auto Ff = dunkl_transform(f, p, xi);
    auto Fm = dunkl_transform(f, p, mxi);
    auto Fg = dunkl_transform(g, p, xi);
    auto Fh = dunkl_transform(h, p, xi);
    for (std::size_t i = 0; i < xi.size(); ++i) {
        CHECK(std::abs(Fm.values[2 - i] - std::conj(Ff.values[i])) < 1e-12);
        CHECK(std::abs(Fh.values[i] - (2.0 * Ff.values[i] - 3.0 * Fg.values[i])) < 1e-8);
    }
}

TEST_CASE("Plancherel") {
    DunklParam p(1.0);
    auto f = bump(2.0, 0.7);
    double R = spectral_cutoff(f, p);
    QuadRule rule = weighted_interval_rule(p, -R, R, 64 + static_cast<int>(R * 3.0));
    auto F = dunkl_transform(f, p, rule);
    double lhs = p.c_lambda() * weighted_interval_rule(p, f.lo(), f.hi(), 200).integrate([&](double x) { return f(x) * f(x); });
    double rhs = 0.0;
    for (std::size_t i = 0; i < F.values.size(); ++i) rhs += F.weights[i] * std::norm(F.values[i]);
    CHECK(p.c_lambda() * rhs == doctest::Approx(lhs).epsilon(1e-5));
}

TEST_CASE("inverse transform round trips") {
    DunklParam p(1.0);
    auto x = linspace(-2.5, 2.5, 11);
    for (const auto& f : {bump(), gaussian()}) {
        double R = spectral_cutoff(f, p);
        QuadRule rule = weighted_interval_rule(p, -R, R, 64 + static_cast<int>(R * 3.0));
        auto back = inverse_dunkl_transform(dunkl_transform(f, p, rule), x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(std::abs(back[i].real() - f(x[i])) < 1e-6);
            CHECK(std::abs(back[i].imag()) < 1e-6);
        }
    }
    SpectralFunction zero{{-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, p, {}, false};
    CHECK(inverse_dunkl_transform(zero, x)[3] == std::complex<double>{});
}

TEST_CASE("inverse transform refuses slowly decaying data") {
    DunklParam p(1.0);
    // transform of an indicator decays like |ξ|^{-λ-1}; truncating it at 40 leaves a large tail
    GridFunction box(0.5, 1.5, [](double) { return 1.0; });
    auto xi = linspace(-40.0, 40.0, 801);
    auto F = dunkl_transform(box, p, xi);
    std::vector<double> x{1.0};
    CHECK_THROWS_AS(inverse_dunkl_transform(F, x), TruncationError);
}

TEST_CASE("lambda translation") {
    DunklParam p(1.0);
    auto f = gaussian();
    auto x = linspace(-2.0, 2.0, 9);
    auto same = lambda_translation(f, p, 0.0, x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(same[i] - f(x[i])) < 1e-6);

    // mass preservation: ∫ τ_y g |x|^{2λ} = ∫ g |x|^{2λ}
    auto g = shifted_gaussian(0.4, 2.0);
    auto grid = weighted_interval_rule(p, -7.0, 7.0, 200);
    auto moved = lambda_translation(g, p, 0.8, grid.nodes);
    double lhs = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) lhs += grid.weights[i] * moved[i];
    double rhs = weighted_interval_rule(p, g.lo(), g.hi(), 100).integrate(g);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));

    DunklParam classical = DunklParam::test_mode(0.0);
    auto shifted = lambda_translation(g, classical, 0.3, x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(shifted[i] - g(x[i] + 0.3)) < 1e-5);
}

TEST_CASE("lambda convolution") {
    DunklParam p(1.0);
    auto f = shifted_gaussian(0.3, 1.5);
    auto g = shifted_gaussian(-0.2, 1.0);
    GridFunction zero(-1.0, 1.0, [](double) { return 0.0; });
    CHECK(lambda_convolution(f, zero, p, 0.4) == 0.0);
    std::vector<double> x{-1.1, -0.3, 0.0, 0.6, 1.4};
    auto fg = lambda_convolution(f, g, p, x);
    auto gf = lambda_convolution(g, f, p, x);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(fg[i] - gf[i]) < 1e-6);

    // F(f * g) = Ff · Fg, the left side by direct quadrature of the convolution
    double L = f.hi() + g.hi();
    QuadRule rule = weighted_interval_rule(p, -L, L, 120);
    auto conv = lambda_convolution(f, g, p, rule.nodes);
    std::vector<double> xi{0.0, 0.7, 2.0};
    auto Ff = dunkl_transform(f, p, xi);
    auto Fg = dunkl_transform(g, p, xi);
    for (std::size_t j = 0; j < xi.size(); ++j) {
        std::complex<double> lhs{};
        for (std::size_t i = 0; i < rule.size(); ++i)
            lhs += rule.weights[i] * conv[i] * std::conj(dunkl_kernel(p, rule.nodes[i] * xi[j]));
        lhs *= p.c_lambda();
        CHECK(std::abs(lhs - Ff.values[j] * Fg.values[j]) < 1e-5);
    }
}
