#include "dunkl/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "dunkl/parallel.hpp"

namespace dunkl {

GridFunction::GridFunction(double lo, double hi, std::function<double(double)> f, std::string description)
    : lo_(lo), hi_(hi), f_(std::move(f)), description_(std::move(description)) {
    if (!(lo < hi)) throw DomainError("GridFunction: need lo < hi");
    if (!f_) throw DomainError("GridFunction: empty evaluator");
}

namespace {

constexpr int node_cap = 16384;

void require_increasing(std::span<const double> grid, const char* where) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw DomainError(std::string(where) + ": grid must be strictly increasing");
}

// f sampled on weighted_interval_rule(p, lo, hi, n), built on demand.
class SampledSupport {
public:
    SampledSupport(const GridFunction& f, const DunklParam& p) : f_(f), p_(p) {}

    struct Data {
        std::vector<double> x;
        std::vector<double> wf;  // weight * f(x)
    };

    std::shared_ptr<const Data> get(int n) {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        QuadRule r = weighted_interval_rule(p_, f_.lo(), f_.hi(), n);
        auto d = std::make_shared<Data>();
        d->x = r.nodes;
        d->wf.resize(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) d->wf[i] = r.weights[i] * f_(r.nodes[i]);
        return cache_.emplace(n, d).first->second;
    }

private:
    const GridFunction& f_;
    DunklParam p_;
    std::mutex mutex_;
    std::map<int, std::shared_ptr<const Data>> cache_;
};

std::complex<double> transform_at(const SampledSupport::Data& d, const DunklParam& p, const DunklKernelTable& E,
                                  double xi) {
    std::complex<double> acc{};
    for (std::size_t i = 0; i < d.x.size(); ++i) acc += d.wf[i] * std::conj(E(d.x[i] * xi));
    return p.c_lambda() * acc;
}

struct Evaluated {
    std::complex<double> value;
    bool converged;
};

Evaluated refined_transform(SampledSupport& s, const DunklParam& p, const DunklKernelTable& E, double xi,
                            double extent, double floor) {
    int n = 64 + static_cast<int>(std::ceil(0.5 * std::abs(xi) * extent));
    auto v1 = transform_at(*s.get(n), p, E, xi);
    for (;;) {
        int n2 = 2 * n;
        auto v2 = transform_at(*s.get(n2), p, E, xi);
        if (std::abs(v2 - v1) <= 1e-9 * std::abs(v2) + floor) return {v2, true};
        if (2 * n2 > node_cap) return {v2, false};
        n = n2;
        v1 = v2;
    }
}

SpectralFunction transform_impl(const GridFunction& f, const DunklParam& p, std::span<const double> xi) {
    if (!f.bounded()) throw UnsupportedInput("dunkl_transform: support must be bounded");
    SampledSupport samples(f, p);
    // Oscillations across the support set the starting node count.
    double extent = std::min(std::max(std::abs(f.lo()), std::abs(f.hi())), f.hi() - f.lo());
    double l1 = 0.0;
    {
        auto d = samples.get(256);
        for (double v : d->wf) l1 += std::abs(v);
        l1 *= p.c_lambda();
    }
    double floor = 1e-13 * l1;

    SpectralFunction out{std::vector<double>(xi.begin(), xi.end()), {}, p, {}, false};
    out.values.resize(xi.size());
    std::vector<char> ok(xi.size(), 1);
    if (l1 == 0.0) return out;
    auto E = DunklKernelTable::get(p);
    parallel_for(xi.size(), [&](std::size_t j) {
        auto e = refined_transform(samples, p, *E, xi[j], extent, floor);
        out.values[j] = e.value;
        ok[j] = e.converged ? 1 : 0;
    });
    out.flagged = std::any_of(ok.begin(), ok.end(), [](char c) { return c == 0; });
    return out;
}

}  // namespace

SpectralFunction dunkl_transform(const GridFunction& f, const DunklParam& p, std::span<const double> xi_grid) {
    require_increasing(xi_grid, "dunkl_transform");
    return transform_impl(f, p, xi_grid);
}

SpectralFunction dunkl_transform(const GridFunction& f, const DunklParam& p, const QuadRule& xi_rule) {
    if (xi_rule.kind != WeightKind::power) throw DomainError("dunkl_transform: rule must carry the |ξ|^{2λ} weight");
    auto out = transform_impl(f, p, xi_rule.nodes);
    out.weights = xi_rule.weights;
    return out;
}

namespace {

// Estimated ∫ beyond the window of |g| |ξ|^{2λ}, from a power-law fit to the
// outer decile at each end. Throws TruncationError when too large.
void check_spectral_tail(const SpectralFunction& g, double tol) {
    const auto& xi = g.xi_grid;
    std::size_t n = xi.size();
    if (n < 20) return;
    double lam = g.param.lambda();
    double peak = 0.0;
    for (const auto& v : g.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return;

    auto side = [&](bool right) {
        double xmax = right ? std::abs(xi.back()) : std::abs(xi.front());
        if (xmax == 0.0) return;
        // points with |ξ| in [0.8, 0.9] and [0.9, 1] of the end value
        double m1 = 0.0, m2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if ((xi[i] > 0) != right) continue;
            double r = std::abs(xi[i]) / xmax;
            double a = std::abs(g.values[i]);
            if (r >= 0.8 && r < 0.9) m1 = std::max(m1, a);
            if (r >= 0.9) m2 = std::max(m2, a);
        }
        if (m2 == 0.0) return;
        // already at the noise floor: the fit below would see no decay
        if (std::max(m1, m2) * std::pow(xmax, 2.0 * lam + 1.0) <= tol * peak) return;
        if (m1 == 0.0) m1 = m2;
        double b = std::log(m1 / m2) / std::log(0.95 / 0.85);
        double order = b - 2.0 * lam;
        if (!(order > 1.0))
            throw TruncationError("inverse_dunkl_transform: spectral data does not decay faster than |xi|^{-(2λ+1)}",
                                  std::numeric_limits<double>::infinity());
        double log_scale = (std::log(m2) + b * std::log(xmax)) / order;
        double R = tail_cutoff(order, tol, std::exp(log_scale));
        if (R > xmax) {
            double tail = g.param.c_lambda() * m2 * std::pow(xmax, 2.0 * lam + 1.0) / (order - 1.0);
            throw TruncationError("inverse_dunkl_transform: truncated xi tail exceeds tolerance", tail);
        }
    };
    side(true);
    if (xi.front() < 0.0) side(false);
}

}  // namespace

std::vector<std::complex<double>> inverse_dunkl_transform(const SpectralFunction& g, std::span<const double> x_grid,
                                                          double tol) {
    const auto& xi = g.xi_grid;
    std::size_t n = xi.size();
    if (g.values.size() != n) throw DomainError("inverse_dunkl_transform: grid/value size mismatch");
    std::vector<std::complex<double>> out(x_grid.size());
    bool all_zero = std::all_of(g.values.begin(), g.values.end(), [](auto v) { return v == std::complex<double>{}; });
    if (all_zero || n == 0) return out;
    for (const auto& v : g.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("inverse_dunkl_transform: non-finite spectral values");
    check_spectral_tail(g, tol);

    const auto& E = *DunklKernelTable::get(g.param);
    double lam = g.param.lambda();
    std::vector<double> w = g.weights;
    if (w.empty()) {
        w.assign(n, 0.0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            double h = 0.5 * (xi[i + 1] - xi[i]);
            w[i] += h * std::pow(std::abs(xi[i]), 2.0 * lam);
            w[i + 1] += h * std::pow(std::abs(xi[i + 1]), 2.0 * lam);
        }
    }
    parallel_for(x_grid.size(), [&](std::size_t k) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < n; ++i) acc += w[i] * g.values[i] * E(x_grid[k] * xi[i]);
        out[k] = g.param.c_lambda() * acc;
    });
    return out;
}

double spectral_cutoff(const GridFunction& f, const DunklParam& p, double tol, double xi_cap) {
    if (!f.bounded()) throw UnsupportedInput("spectral_cutoff: support must be bounded");
    std::vector<double> probe;
    for (int i = 0; i <= 64; ++i) probe.push_back(4.0 * i / 64.0);
    auto head = dunkl_transform(f, p, probe);
    double peak = 0.0;
    for (auto v : head.values) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 4.0;
    // values below the forward transform's own accuracy count as zero
    double l1 = p.c_lambda() * weighted_interval_rule(p, f.lo(), f.hi(), 256).integrate([&](double x) {
        return std::abs(f(x));
    });
    double floor = 1e-12 * l1;
    const double m = 2.0 * p.lambda() + 1.0;
    for (double R = 4.0; R <= xi_cap; R *= 2.0) {
        std::vector<double> window;
        for (int i = 0; i < 64; ++i) window.push_back(R + R * i / 63.0);
        auto vals = dunkl_transform(f, p, window);
        double top = 0.0;
        for (auto v : vals.values) top = std::max(top, std::abs(v));
        if (top <= floor || top * std::pow(2.0 * R, m) <= tol * peak) return 2.0 * R;
    }
    throw TruncationError("spectral_cutoff: transform has not decayed inside the xi cap", 0.0);
}

namespace {

int spectral_nodes(double R, double omega) { return 64 + static_cast<int>(std::ceil(0.7 * R * omega)); }

}  // namespace

std::vector<double> lambda_translation(const GridFunction& f, const DunklParam& p, double y,
                                       std::span<const double> x_grid) {
    if (!f.bounded()) throw UnsupportedInput("lambda_translation: support must be bounded");
    double R = spectral_cutoff(f, p);
    double xmax = 0.0;
    for (double x : x_grid) xmax = std::max(xmax, std::abs(x));
    double extent = std::max(std::abs(f.lo()), std::abs(f.hi()));
    QuadRule rule = weighted_interval_rule(p, -R, R, spectral_nodes(R, extent + std::abs(y) + xmax));
    SpectralFunction Ff = dunkl_transform(f, p, rule);
    const auto& E = *DunklKernelTable::get(p);
    std::vector<double> out(x_grid.size());
    std::vector<std::complex<double>> ey(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) ey[i] = rule.weights[i] * Ff.values[i] * E(y * rule.nodes[i]);
    parallel_for(x_grid.size(), [&](std::size_t k) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < rule.size(); ++i) acc += ey[i] * E(x_grid[k] * rule.nodes[i]);
        out[k] = p.c_lambda() * acc.real();
    });
    return out;
}

std::vector<double> lambda_convolution(const GridFunction& f, const GridFunction& g, const DunklParam& p,
                                       std::span<const double> x_grid) {
    if (!f.bounded() || !g.bounded()) throw UnsupportedInput("lambda_convolution: supports must be bounded");
    std::vector<double> out(x_grid.size(), 0.0);
    double R = spectral_cutoff(g, p);
    double xmax = 0.0;
    for (double x : x_grid) xmax = std::max(xmax, std::abs(x));
    double ef = std::max(std::abs(f.lo()), std::abs(f.hi()));
    double eg = std::max(std::abs(g.lo()), std::abs(g.hi()));
    QuadRule xi_rule = weighted_interval_rule(p, -R, R, spectral_nodes(R, ef + eg + xmax));
    SpectralFunction Fg = dunkl_transform(g, p, xi_rule);
    QuadRule t_rule = weighted_interval_rule(p, f.lo(), f.hi(), spectral_nodes(R, ef));

    const auto& E = *DunklKernelTable::get(p);
    const std::size_t nt = t_rule.size(), nx = xi_rule.size();
    std::vector<double> wf(nt);
    for (std::size_t t = 0; t < nt; ++t) wf[t] = t_rule.weights[t] * f(t_rule.nodes[t]);
    std::vector<std::complex<double>> G(nx);
    for (std::size_t j = 0; j < nx; ++j) G[j] = xi_rule.weights[j] * Fg.values[j];
    // M[t][j] = E(-i t ξ_j)
    std::vector<std::complex<double>> M(nt * nx);
    parallel_for(nt, [&](std::size_t t) {
        for (std::size_t j = 0; j < nx; ++j) M[t * nx + j] = std::conj(E(t_rule.nodes[t] * xi_rule.nodes[j]));
    });
    double c = p.c_lambda();
    parallel_for(x_grid.size(), [&](std::size_t k) {
        std::vector<std::complex<double>> gx(nx);
        for (std::size_t j = 0; j < nx; ++j) gx[j] = G[j] * E(x_grid[k] * xi_rule.nodes[j]);
        double acc = 0.0;
        for (std::size_t t = 0; t < nt; ++t) {
            if (wf[t] == 0.0) continue;
            std::complex<double> tau{};
            for (std::size_t j = 0; j < nx; ++j) tau += M[t * nx + j] * gx[j];
            acc += wf[t] * c * tau.real();
        }
        out[k] = c * acc;
    });
    return out;
}

double lambda_convolution(const GridFunction& f, const GridFunction& g, const DunklParam& p, double x) {
    std::vector<double> grid{x};
    return lambda_convolution(f, g, p, grid)[0];
}

}  // namespace dunkl
