#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "dunkl/special.hpp"

namespace dunkl {

enum class WeightKind {
    legendre,  // 1 on [-1,1]
    jacobi,    // (1-x)^alpha (1+x)^beta on [-1,1]
    power,     // |x|^{2λ} on (lo, hi)
};

/// Immutable node/weight set. integrate(f) = Σ w_i f(x_i) approximates ∫ f dμ
/// for the measure described by kind/alpha/beta/domain.
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    WeightKind kind = WeightKind::legendre;
    double alpha = 0.0;
    double beta = 0.0;
    double lo = -1.0;
    double hi = 1.0;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const {
        using R = decltype(f(0.0));
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Gauss rule for (1-x)^alpha (1+x)^beta on [-1,1], alpha, beta > -1.
QuadRule gauss_jacobi(double alpha, double beta, int n);

/// Shared, cached copy of gauss_jacobi(alpha, beta, n).
std::shared_ptr<const QuadRule> cached_gauss_jacobi(double alpha, double beta, int n);

/// Gauss rule for (1-s²)^exponent on [-1,1].
QuadRule jacobi_rule(double exponent, int n);

/// Gauss–Legendre on [-1,1] (cached).
const QuadRule& gauss_legendre(int n);

/// Default inner rule size max(64, ceil(10λ)+32).
int default_rule_size(double lambda);

/// Rule for f ↦ ∫_lo^hi f(x)|x|^{2λ} dx. Intervals touching 0 get Gauss–Jacobi
/// with exponent 2λ at the zero end; intervals containing 0 are split there
/// and receive n nodes per side. Intervals away from 0 are cut into panels
/// that grade geometrically toward 0. Large n becomes 64-node panels.
QuadRule weighted_interval_rule(const DunklParam& p, double lo, double hi, int n);

struct PvResult {
    double value = 0.0;
    double error = 0.0;
    std::vector<double> partials;  // symmetric-exclusion integrals I(eps_k)
};

/// Principal value of ∫_{x-radius}^{x+radius} f(t) dt, extrapolated from the
/// symmetric-exclusion integrals I(eps_k) with polynomial (Neville) Richardson.
PvResult principal_value(const std::function<double(double)>& f, double x, double radius,
                         std::span<const double> eps_sequence);

/// eps, eps/2, ..., count entries.
std::vector<double> geometric_eps(double first, int count);

/// R with ∫_R^∞ (scale/r)^order dr <= tol.
double tail_cutoff(double decay_order, double tol, double scale);

struct Attractor {
    double point;
    double width;  // smallest panel half-width next to the point
};

/// Breakpoints on [lo, hi] that grade geometrically (factor `ratio`) toward
/// each attractor, starting at its width.
std::vector<double> graded_breakpoints(double lo, double hi, std::span<const Attractor> attractors,
                                       double ratio = 2.0);

/// Σ over panels of an m-point Gauss–Legendre rule.
template <class F>
auto integrate_panels(F&& f, std::span<const double> breaks, int m = 16) {
    const QuadRule& gl = gauss_legendre(m);
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        double a = breaks[k], b = breaks[k + 1];
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        R part{};
        for (std::size_t i = 0; i < gl.size(); ++i) part += gl.weights[i] * f(c + h * gl.nodes[i]);
        acc += h * part;
    }
    return acc;
}

/// Like integrate_panels but for f(x)|x|^{2λ}. Panels ending at 0 use a
/// Gauss–Jacobi rule carrying the weight exactly; 0 must be a breakpoint if
/// it lies inside.
template <class F>
auto integrate_weighted_panels(F&& f, double lambda, std::span<const double> breaks, int m = 16) {
    const QuadRule& gl = gauss_legendre(m);
    auto gj = cached_gauss_jacobi(0.0, 2.0 * lambda, m);
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        double a = breaks[k], b = breaks[k + 1];
        double c = 0.5 * (a + b), h = 0.5 * (b - a);
        R part{};
        if (a == 0.0) {
            for (std::size_t i = 0; i < gj->size(); ++i) part += gj->weights[i] * f(c + h * gj->nodes[i]);
            part *= std::pow(h, 2.0 * lambda);
        } else if (b == 0.0) {
            for (std::size_t i = 0; i < gj->size(); ++i) part += gj->weights[i] * f(c - h * gj->nodes[i]);
            part *= std::pow(h, 2.0 * lambda);
        } else {
            for (std::size_t i = 0; i < gl.size(); ++i) {
                double x = c + h * gl.nodes[i];
                part += gl.weights[i] * std::pow(std::abs(x), 2.0 * lambda) * f(x);
            }
        }
        acc += h * part;
    }
    return acc;
}

/// ∫_R^∞ g(t) dt through t = R/u, with panels graded toward u = 0.
template <class F>
auto integrate_to_infinity(F&& g, double R, int m = 16) {
    std::vector<double> breaks{0.0};
    for (double u = 1.0 / 1024.0; u < 1.0; u *= 2.0) breaks.push_back(u);
    breaks.push_back(1.0);
    auto mapped = [&](double u) { return g(R / u) * (R / (u * u)); };
    return integrate_panels(mapped, breaks, m);
}

}  // namespace dunkl
