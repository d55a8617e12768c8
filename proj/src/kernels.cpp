#include "dunkl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dunkl {

KernelFrame KernelFrame::make(double x, double t, double x0, double y, double s) {
    double sf = x * x + t * t - 2.0 * x * t * s;
    return {sf, y * y + sf, (t - x0) * (t + x0 - 2.0 * x * s)};
}

HalfPlanePoint::HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
    if (!(y_ > 0.0)) throw DomainError("HalfPlanePoint: y must be > 0");
    if (!std::isfinite(x_) || !std::isfinite(y_)) throw DomainError("HalfPlanePoint: coordinates must be finite");
}

namespace {

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

double phi(int sigma, double u) {
    if (sigma > 0) return 2.0 - u;
    if (sigma < 0) return u;
    return 1.0;
}

}  // namespace

KernelEngine::KernelEngine(double lambda) : lambda_(lambda) {
    if (!(lambda > 0.0)) throw DomainError("KernelEngine: requires lambda > 0");
    prefactor_ = lambda * gamma(lambda + 0.5) * std::pow(2.0, lambda + 0.5) / std::numbers::pi;
    beta_half_ = beta(0.5, lambda);
    beta_3half_ = beta(1.5, lambda);
    inner_n_ = default_rule_size(lambda);
    gegenbauer_ = cached_gauss_jacobi(lambda - 1.0, lambda - 1.0, inner_n_);
    left_ = cached_gauss_jacobi(0.0, lambda - 1.0, 16);
    right_ = cached_gauss_jacobi(lambda - 1.0, 0.0, 16);
    legendre_ = cached_gauss_jacobi(0.0, 0.0, 16);

    constexpr int N = cheb_degree + 1;
    for (int side = 0; side < 2; ++side) {
        int sigma = side ? 1 : -1;
        table_[side].resize(segments);
        for (int k = 0; k < segments; ++k) {
            double mid = tau_lo + (k + 0.5) * tau_step;
            double half = 0.5 * tau_step;
            std::array<double, N> f{};
            for (int j = 0; j < N; ++j) {
                double xj = std::cos(std::numbers::pi * (j + 0.5) / N);
                f[j] = std::log(reduced_direct(sigma, std::exp(mid + half * xj)));
            }
            auto& c = table_[side][k];
            for (int m = 0; m < N; ++m) {
                double s = 0.0;
                for (int j = 0; j < N; ++j) s += f[j] * std::cos(std::numbers::pi * m * (j + 0.5) / N);
                c[m] = 2.0 * s / N;
            }
        }
    }
}

std::shared_ptr<const KernelEngine> KernelEngine::get(const DunklParam& p) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const KernelEngine>> cache;
    p.require_positive("KernelEngine");
    std::lock_guard lock(mutex);
    auto it = cache.find(p.lambda());
    if (it != cache.end()) return it->second;
    auto e = std::make_shared<const KernelEngine>(p.lambda());
    cache.emplace(p.lambda(), e);
    return e;
}

double KernelEngine::reduced_direct(int sigma, double eps) const {
    const double lam = lambda_;
    const double m = -lam - 1.0;
    if (!(eps > 0.0)) throw SingularityError("s-integral diverges at eps = 0");
    if (eps >= 0.05) {
        const auto& r = *gegenbauer_;
        double acc = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            double u = 1.0 - r.nodes[i];
            acc += r.weights[i] * phi(sigma, u) * std::pow(eps + u, m);
        }
        return acc;
    }
    double acc = 0.0;
    // [0, eps]: weight u^{λ-1} carried by the rule
    {
        const auto& r = *left_;
        double h = 0.5 * eps, part = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            double u = h * (1.0 + r.nodes[i]);
            part += r.weights[i] * std::pow(2.0 - u, lam - 1.0) * phi(sigma, u) * std::pow(eps + u, m);
        }
        acc += std::pow(h, lam) * part;
    }
    // [eps, 1] in factor-2 panels
    {
        const auto& r = *legendre_;
        for (double a = eps; a < 1.0; a *= 2.0) {
            double b = std::min(2.0 * a, 1.0);
            double c = 0.5 * (a + b), h = 0.5 * (b - a), part = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                double u = c + h * r.nodes[i];
                part += r.weights[i] * std::pow(u * (2.0 - u), lam - 1.0) * phi(sigma, u) * std::pow(eps + u, m);
            }
            acc += h * part;
        }
    }
    // [1, 2]: weight (2-u)^{λ-1} carried by the rule
    {
        const auto& r = *right_;
        double part = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            double u = 1.5 + 0.5 * r.nodes[i];
            part += r.weights[i] * std::pow(u, lam - 1.0) * phi(sigma, u) * std::pow(eps + u, m);
        }
        acc += std::pow(0.5, lam) * part;
    }
    return acc;
}

double KernelEngine::reduced(int sigma, double eps) const {
    if (sigma == 0) return beta_half_ * std::pow(eps, -lambda_ - 1.0);
    double tau = std::log(eps);
    if (!(tau >= tau_lo)) return reduced_direct(sigma, eps);
    if (tau >= tau_hi) {
        double lead = beta_half_ - (lambda_ + 1.0) * (beta_half_ - sigma * beta_3half_) / eps;
        return std::pow(eps, -lambda_ - 1.0) * lead;
    }
    int k = std::min(segments - 1, static_cast<int>((tau - tau_lo) / tau_step));
    double mid = tau_lo + (k + 0.5) * tau_step;
    double x = (tau - mid) / (0.5 * tau_step);
    const auto& c = table_[sigma > 0 ? 1 : 0][k];
    double b1 = 0.0, b2 = 0.0;
    for (int m = cheb_degree; m >= 1; --m) {
        double b0 = c[m] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return std::exp(0.5 * c[0] + x * b1 - b2);
}

double KernelEngine::s_from_reduced(int sigma, double g, double B, bool direct) const {
    if (B == 0.0) return beta_half_ * std::pow(g, -lambda_ - 1.0);
    double eps = g / B;
    if (!direct && eps >= std::exp(tau_hi)) {
        double A = g + B;
        return std::pow(A, -lambda_ - 1.0) * (beta_half_ + sigma * (lambda_ + 1.0) * (B / A) * beta_3half_);
    }
    double T = direct ? reduced_direct(sigma, eps) : reduced(sigma, eps);
    return T * std::pow(B, -lambda_ - 1.0);
}

double KernelEngine::s_integral(int sigma, double g, double B) const { return s_from_reduced(sigma, g, B, false); }

double KernelEngine::s_integral_direct(int sigma, double g, double B) const {
    return s_from_reduced(sigma, g, B, true);
}

double KernelEngine::hilbert(double x, double t) const {
    double d = std::abs(x) - std::abs(t);
    return prefactor_ * (x - t) * s_integral(sgn(x) * sgn(t), d * d, 2.0 * std::abs(x) * std::abs(t));
}

double KernelEngine::poisson(double x, double y, double t) const {
    double d = std::abs(x) - std::abs(t);
    return prefactor_ * y * s_integral(sgn(x) * sgn(t), y * y + d * d, 2.0 * std::abs(x) * std::abs(t));
}

double KernelEngine::conj_poisson(double x, double y, double t) const {
    double d = std::abs(x) - std::abs(t);
    return prefactor_ * (x - t) * s_integral(sgn(x) * sgn(t), y * y + d * d, 2.0 * std::abs(x) * std::abs(t));
}

double hilbert_kernel(const DunklParam& p, double x, double t) {
    p.require_positive("hilbert_kernel");
    if (x == 0.0 && t == 0.0) throw SingularityError("hilbert_kernel: (x, t) = (0, 0)");
    if (x == t) throw SingularityError("hilbert_kernel: x = t");
    if (std::abs(x - t) < 1e-8 * (std::abs(x) + std::abs(t)))
        throw SingularityError("hilbert_kernel: |x - t| below the near-diagonal guard");
    return KernelEngine::get(p)->hilbert(x, t);
}

double poisson_kernel(const DunklParam& p, double x, double y, double t) {
    p.require_positive("poisson_kernel");
    if (!(y > 0.0)) throw DomainError("poisson_kernel: y must be > 0");
    return KernelEngine::get(p)->poisson(x, y, t);
}

double conj_poisson_kernel(const DunklParam& p, double x, double y, double t) {
    p.require_positive("conj_poisson_kernel");
    if (!(y >= 0.0)) throw DomainError("conj_poisson_kernel: y must be >= 0");
    if (y == 0.0) return hilbert_kernel(p, x, t);
    return KernelEngine::get(p)->conj_poisson(x, y, t);
}

Source Source::from(const Atom& a) {
    const Interval& I = a.interval();
    return {I.lo(), I.hi(), [a](double t) { return a.poly((t - a.interval().x0()) / a.interval().delta0()); }};
}

Source Source::from(const GridFunction& g) {
    if (!g.bounded()) throw UnsupportedInput("Source: support must be bounded");
    return {g.lo(), g.hi(), [g](double t) { return g(t); }};
}

FieldEvaluator::FieldEvaluator(const DunklParam& p, Source src)
    : param_(p), src_(std::move(src)), engine_(KernelEngine::get(p)) {}

double FieldEvaluator::kernel(Kind kind, double x, double y, double t) const {
    switch (kind) {
        case Kind::poisson: return engine_->poisson(x, y, t);
        case Kind::conj: return engine_->conj_poisson(x, y, t);
        case Kind::hilbert: return engine_->hilbert(x, t);
    }
    return 0.0;
}

namespace {

double distance_to(double x, double lo, double hi) {
    if (x < lo) return lo - x;
    if (x > hi) return x - hi;
    return 0.0;
}

}  // namespace

double FieldEvaluator::integrate(Kind kind, double x, double y) const {
    const double lo = src_.lo, hi = src_.hi;
    const double lam = param_.lambda();
    const double len = hi - lo;
    auto integrand = [&](double t) { return src_.f(t) * kernel(kind, x, y, t); };

    double d_diag = distance_to(x, lo, hi);
    double d_refl = distance_to(-x, lo, hi);
    bool pv = (y == 0.0 && d_diag == 0.0);
    if (y == 0.0 && (x == lo || x == hi))
        throw SingularityError("hilbert_transform: x on the support boundary (logarithmic singularity)");

    std::vector<Attractor> att;
    double r = 0.0;
    if (pv) {
        r = std::min({x - lo, hi - x, 0.05 * len});
        if (x != 0.0 && std::abs(x) < 2.0 * r) r = 0.5 * std::abs(x);
        att.push_back({x, r});
    } else {
        att.push_back({x, 0.25 * std::max(y, d_diag)});
    }
    double wr = 0.25 * std::max(y, d_refl);
    // -x inside the support: only a logarithmic singularity (σ = -1), so a
    // modest innermost panel keeps ε inside the tabulated range.
    if (wr == 0.0) wr = 1e-8 * len;
    att.push_back({-x, wr});
    if (lo < 0.0 && hi > 0.0) att.push_back({0.0, 0.0});

    auto integrate_range = [&](double a, double b) {
        if (!(b > a)) return 0.0;
        auto breaks = graded_breakpoints(a, b, att);
        if (a < 0.0 && b > 0.0 && std::find(breaks.begin(), breaks.end(), 0.0) == breaks.end()) {
            breaks.push_back(0.0);
            std::sort(breaks.begin(), breaks.end());
        }
        return integrate_weighted_panels(integrand, lam, breaks, 20);
    };

    double total;
    if (pv) {
        total = integrate_range(lo, x - r) + integrate_range(x + r, hi);
        auto weighted = [&](double t) { return integrand(t) * std::pow(std::abs(t), 2.0 * lam); };
        auto eps = geometric_eps(0.5 * r, 8);
        total += principal_value(weighted, x, r, eps).value;
    } else {
        total = integrate_range(lo, hi);
    }
    return param_.c_lambda() * total;
}

double FieldEvaluator::poisson(double x, double y) const {
    if (!(y > 0.0)) throw DomainError("poisson_integral: y must be > 0");
    return integrate(Kind::poisson, x, y);
}

double FieldEvaluator::conj_poisson(double x, double y) const {
    if (!(y >= 0.0)) throw DomainError("conj_poisson_integral: y must be >= 0");
    return integrate(y == 0.0 ? Kind::hilbert : Kind::conj, x, y);
}

double FieldEvaluator::hilbert(double x) const { return integrate(Kind::hilbert, x, 0.0); }

namespace {

void require_match(const Atom& a, const DunklParam& p) {
    if (a.param().lambda() != p.lambda()) throw DomainError("atom lambda does not match the supplied parameter");
}

}  // namespace

double poisson_integral(const Atom& a, const DunklParam& p, HalfPlanePoint pt) {
    require_match(a, p);
    return FieldEvaluator(p, Source::from(a)).poisson(pt.x, pt.y);
}

double poisson_integral(const GridFunction& f, const DunklParam& p, HalfPlanePoint pt) {
    return FieldEvaluator(p, Source::from(f)).poisson(pt.x, pt.y);
}

double conj_poisson_integral(const Atom& a, const DunklParam& p, HalfPlanePoint pt) {
    require_match(a, p);
    return FieldEvaluator(p, Source::from(a)).conj_poisson(pt.x, pt.y);
}

double conj_poisson_integral(const GridFunction& f, const DunklParam& p, HalfPlanePoint pt) {
    return FieldEvaluator(p, Source::from(f)).conj_poisson(pt.x, pt.y);
}

double hilbert_transform(const Atom& a, const DunklParam& p, double x) {
    require_match(a, p);
    return FieldEvaluator(p, Source::from(a)).hilbert(x);
}

double hilbert_transform(const GridFunction& f, const DunklParam& p, double x) {
    return FieldEvaluator(p, Source::from(f)).hilbert(x);
}

double dunkl_derivative(const std::function<double(double)>& f, const DunklParam& p, double x, double h) {
    if (x == 0.0) throw DomainError("dunkl_derivative: x = 0 is excluded");
    if (!(h > 0.0)) throw DomainError("dunkl_derivative: step must be > 0");
    double fp = (f(x + h) - f(x - h)) / (2.0 * h);
    return fp + p.lambda() / x * (f(x) - f(-x));
}

std::pair<double, double> cauchy_riemann_residual(const Field& u, const Field& v, const DunklParam& p,
                                                  HalfPlanePoint pt, double h) {
    if (pt.x == 0.0) throw DomainError("cauchy_riemann_residual: x = 0 is excluded");
    if (!(h > 0.0) || !(h < 0.25 * pt.y)) throw DomainError("cauchy_riemann_residual: need 0 < h < y/4");
    const double x = pt.x, y = pt.y;
    auto dx = [&](const Field& w) {
        return (w(x + h, y) - w(x - h, y)) / (2.0 * h) + p.lambda() / x * (w(x, y) - w(-x, y));
    };
    auto dy = [&](const Field& w) { return (w(x, y + h) - w(x, y - h)) / (2.0 * h); };
    return {dx(u) - dy(v), dy(u) + dx(v)};
}

}  // namespace dunkl
