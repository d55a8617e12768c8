#include "dunkl/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace dunkl {

namespace {

struct Recurrence {
    std::vector<double> a;      // a_0 .. a_n
    std::vector<double> sqrtb;  // sqrt(b_0 = mu0), sqrt(b_1) .. sqrt(b_n)
};

// Monic Jacobi recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
Recurrence jacobi_recurrence(double al, double be, int n) {
    Recurrence r;
    r.a.resize(n + 1);
    r.sqrtb.resize(n + 1);
    double ab = al + be;
    for (int k = 0; k <= n; ++k) {
        double s = 2.0 * k + ab;
        if (k == 0)
            r.a[k] = (be - al) / (ab + 2.0);
        else
            r.a[k] = (be * be - al * al) / (s * (s + 2.0));
    }
    double mu0 = std::pow(2.0, ab + 1.0) * beta(al + 1.0, be + 1.0);
    r.sqrtb[0] = std::sqrt(mu0);
    for (int k = 1; k <= n; ++k) {
        double s = 2.0 * k + ab;
        double b;
        if (k == 1)
            b = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        else
            b = 4.0 * k * (k + al) * (k + be) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        r.sqrtb[k] = std::sqrt(b);
    }
    return r;
}

// Orthonormal p_0..p_{n-1} at x: returns Σ p_k², and p_n, p_n' through refs.
double christoffel(const Recurrence& r, int n, double x, double& pn, double& dpn) {
    double pm1 = 0.0, p = 1.0 / r.sqrtb[0];
    double dpm1 = 0.0, dp = 0.0;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += p * p;
        double pk1 = ((x - r.a[k]) * p - (k > 0 ? r.sqrtb[k] * pm1 : 0.0)) / r.sqrtb[k + 1];
        double dpk1 = (p + (x - r.a[k]) * dp - (k > 0 ? r.sqrtb[k] * dpm1 : 0.0)) / r.sqrtb[k + 1];
        pm1 = p;
        p = pk1;
        dpm1 = dp;
        dp = dpk1;
    }
    pn = p;
    dpn = dp;
    return sum;
}

std::mutex cache_mutex;
std::map<std::tuple<double, double, int>, std::shared_ptr<const QuadRule>> rule_cache;

}  // namespace

QuadRule gauss_jacobi(double al, double be, int n) {
    if (n <= 0) throw DomainError("gauss_jacobi: n must be positive");
    if (!(al > -1.0) || !(be > -1.0)) throw DomainError("gauss_jacobi: exponents must be > -1");
    Recurrence r = jacobi_recurrence(al, be, n);

    Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
    for (int k = 0; k < n; ++k) diag[k] = r.a[k];
    for (int k = 1; k < n; ++k) sub[k - 1] = r.sqrtb[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (n == 1) {
        Eigen::MatrixXd m(1, 1);
        m(0, 0) = diag[0];
        es.compute(m, Eigen::EigenvaluesOnly);
    } else {
        es.computeFromTridiagonal(diag, sub.head(n - 1), Eigen::EigenvaluesOnly);
    }

    QuadRule q;
    q.kind = (al == 0.0 && be == 0.0) ? WeightKind::legendre : WeightKind::jacobi;
    q.alpha = al;
    q.beta = be;
    q.nodes.resize(n);
    q.weights.resize(n);
    const Eigen::VectorXd& ev = es.eigenvalues();
    for (int i = 0; i < n; ++i) {
        double x = ev[i];
        double gap = std::numeric_limits<double>::infinity();
        if (i > 0) gap = std::min(gap, x - ev[i - 1]);
        if (i + 1 < n) gap = std::min(gap, ev[i + 1] - x);
        if (n == 1) gap = 1.0;
        for (int it = 0; it < 2; ++it) {
            double pn, dpn;
            christoffel(r, n, x, pn, dpn);
            if (dpn == 0.0) break;
            double dx = pn / dpn;
            if (!(std::abs(dx) < 0.1 * gap)) break;
            x -= dx;
        }
        double pn, dpn;
        q.nodes[i] = x;
        q.weights[i] = 1.0 / christoffel(r, n, x, pn, dpn);
    }
    return q;
}

std::shared_ptr<const QuadRule> cached_gauss_jacobi(double al, double be, int n) {
    auto key = std::make_tuple(al, be, n);
    {
        std::lock_guard lock(cache_mutex);
        auto it = rule_cache.find(key);
        if (it != rule_cache.end()) return it->second;
    }
    auto rule = std::make_shared<const QuadRule>(gauss_jacobi(al, be, n));
    std::lock_guard lock(cache_mutex);
    return rule_cache.emplace(key, rule).first->second;
}

QuadRule jacobi_rule(double exponent, int n) {
    if (!(exponent > -1.0)) throw DomainError("jacobi_rule: exponent must be > -1");
    if (n <= 0) throw DomainError("jacobi_rule: n must be positive");
    return *cached_gauss_jacobi(exponent, exponent, n);
}

const QuadRule& gauss_legendre(int n) { return *cached_gauss_jacobi(0.0, 0.0, n); }

int default_rule_size(double lambda) {
    return std::max(64, static_cast<int>(std::ceil(10.0 * lambda)) + 32);
}

namespace {

constexpr int panel_nodes = 64;

// Append a rule on [a, b] (one endpoint may be 0) for f |x|^{2λ}.
void append_panel(QuadRule& out, double lam, double a, double b, int m) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    if (a == 0.0 || b == 0.0) {
        auto gj = cached_gauss_jacobi(0.0, 2.0 * lam, m);
        double scale = h * std::pow(h, 2.0 * lam);
        if (a == 0.0) {
            for (std::size_t i = 0; i < gj->size(); ++i) {
                out.nodes.push_back(c + h * gj->nodes[i]);
                out.weights.push_back(scale * gj->weights[i]);
            }
        } else {
            for (std::size_t i = gj->size(); i-- > 0;) {
                out.nodes.push_back(c - h * gj->nodes[i]);
                out.weights.push_back(scale * gj->weights[i]);
            }
        }
        return;
    }
    const QuadRule& gl = gauss_legendre(m);
    for (std::size_t i = 0; i < gl.size(); ++i) {
        double x = c + h * gl.nodes[i];
        out.nodes.push_back(x);
        out.weights.push_back(h * gl.weights[i] * std::pow(std::abs(x), 2.0 * lam));
    }
}

// Rule on [a, b] with 0 <= a < b.
void append_positive(QuadRule& out, double lam, double a, double b, int n) {
    std::vector<double> cuts{a};
    if (a > 0.0) {
        for (double s = 2.0 * a; s < b; s *= 2.0) cuts.push_back(s);
    }
    cuts.push_back(b);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        double l = cuts[k], r = cuts[k + 1];
        if (n <= 2 * panel_nodes) {
            append_panel(out, lam, l, r, n);
            continue;
        }
        int pieces = (n + panel_nodes - 1) / panel_nodes;
        for (int j = 0; j < pieces; ++j) {
            double pl = l + (r - l) * j / pieces;
            double pr = (j + 1 == pieces) ? r : l + (r - l) * (j + 1) / pieces;
            append_panel(out, lam, pl, pr, panel_nodes);
        }
    }
}

}  // namespace

QuadRule weighted_interval_rule(const DunklParam& p, double lo, double hi, int n) {
    if (!(lo < hi)) throw DomainError("weighted_interval_rule: need lo < hi");
    if (n <= 0) throw DomainError("weighted_interval_rule: n must be positive");
    double lam = p.lambda();
    QuadRule q;
    q.kind = WeightKind::power;
    q.alpha = 2.0 * lam;
    q.beta = 0.0;
    q.lo = lo;
    q.hi = hi;
    auto append_mirrored = [&](double a, double b) {
        // rule for [-b, -a] built from [a, b]
        QuadRule tmp;
        append_positive(tmp, lam, a, b, n);
        for (std::size_t i = tmp.size(); i-- > 0;) {
            q.nodes.push_back(-tmp.nodes[i]);
            q.weights.push_back(tmp.weights[i]);
        }
    };
    if (lo >= 0.0) {
        append_positive(q, lam, lo, hi, n);
    } else if (hi <= 0.0) {
        append_mirrored(-hi, -lo);
    } else {
        append_mirrored(0.0, -lo);
        append_positive(q, lam, 0.0, hi, n);
    }
    return q;
}

PvResult principal_value(const std::function<double(double)>& f, double x, double radius,
                         std::span<const double> eps) {
    if (eps.size() < 3) throw DomainError("principal_value: need at least 3 eps values");
    if (!(radius > 0.0)) throw DomainError("principal_value: radius must be > 0");
    for (std::size_t k = 0; k < eps.size(); ++k) {
        if (!(eps[k] > 0.0) || (k > 0 && !(eps[k] < eps[k - 1])))
            throw DomainError("principal_value: eps sequence must be positive and decreasing");
    }
    if (!(eps[0] < radius)) throw DomainError("principal_value: eps must be smaller than radius");

    auto side_pair = [&](double inner, double outer) {
        // ∫ over inner <= |t - x| <= outer, cut into factor-2 shells
        std::vector<double> cuts{inner};
        for (double s = 2.0 * inner; s < outer; s *= 2.0) cuts.push_back(s);
        cuts.push_back(outer);
        auto sym = [&](double u) { return f(x + u) + f(x - u); };
        return integrate_panels(sym, cuts, 16);
    };

    PvResult res;
    double acc = side_pair(eps[0], radius);
    res.partials.push_back(acc);
    for (std::size_t k = 1; k < eps.size(); ++k) {
        acc += side_pair(eps[k], eps[k - 1]);
        res.partials.push_back(acc);
    }

    const auto& I = res.partials;
    std::size_t K = I.size();
    double scale = 0.0;
    for (double v : I) scale = std::max(scale, std::abs(v));

    // divergence: normalized increments keep growing
    if (K >= 3) {
        auto rate = [&](std::size_t k) { return std::abs(I[k] - I[k - 1]) / (eps[k - 1] - eps[k]); };
        double r1 = rate(K - 2), r2 = rate(K - 1);
        double r0 = K >= 4 ? rate(K - 3) : 0.0;
        bool small = std::abs(I[K - 1] - I[K - 2]) <= 1e-13 * scale;
        if (!small && r2 > 1.5 * r1 && (K < 4 || r1 > 1.5 * r0))
            throw ConvergenceError("principal_value: exclusion integrals diverge", res.partials);
    }

    // Neville extrapolation to eps = 0 on the last few points
    std::size_t m = std::min<std::size_t>(K, 5);
    std::size_t base = K - m;
    std::vector<std::vector<double>> T(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        T[i][0] = I[base + i];
        for (std::size_t j = 1; j <= i; ++j) {
            double ei = eps[base + i], eij = eps[base + i - j];
            T[i][j] = T[i][j - 1] + (T[i][j - 1] - T[i - 1][j - 1]) * ei / (eij - ei);
        }
    }
    std::size_t top = m - 1;
    res.value = T[top][top];
    double e1 = top >= 1 ? std::abs(T[top][top] - T[top][top - 1]) : 0.0;
    double e2 = top >= 1 ? std::abs(T[top][top] - T[top - 1][top - 1]) : 0.0;
    res.error = e1 + e2 + 64.0 * std::numeric_limits<double>::epsilon() * scale;
    return res;
}

std::vector<double> geometric_eps(double first, int count) {
    std::vector<double> out;
    double e = first;
    for (int k = 0; k < count; ++k, e *= 0.5) out.push_back(e);
    return out;
}

double tail_cutoff(double order, double tol, double scale) {
    if (!(order > 1.0)) throw DomainError("tail_cutoff: decay order must be > 1 (non-integrable tail)");
    if (!(tol > 0.0) || !(scale > 0.0)) throw DomainError("tail_cutoff: tol and scale must be > 0");
    // scale^order R^{1-order} / (order-1) = tol
    return std::pow(std::pow(scale, order) / ((order - 1.0) * tol), 1.0 / (order - 1.0));
}

std::vector<double> graded_breakpoints(double lo, double hi, std::span<const Attractor> attractors,
                                       double ratio) {
    std::vector<double> pts{lo, hi};
    for (const auto& at : attractors) {
        if (at.point > lo && at.point < hi) pts.push_back(at.point);
        if (!(at.width > 0.0)) continue;
        for (double d = at.width; at.point - d > lo; d *= ratio)
            if (at.point - d < hi) pts.push_back(at.point - d);
        for (double d = at.width; at.point + d < hi; d *= ratio)
            if (at.point + d > lo) pts.push_back(at.point + d);
    }
    std::sort(pts.begin(), pts.end());
    double tiny = 1e-15 * std::max(std::abs(lo), std::abs(hi));
    std::vector<double> out;
    for (double v : pts) {
        if (out.empty() || v - out.back() > tiny) out.push_back(v);
    }
    if (out.back() != hi) out.back() = hi;
    return out;
}

}  // namespace dunkl
