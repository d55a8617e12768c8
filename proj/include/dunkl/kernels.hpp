#pragma once

#include <array>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "dunkl/atoms.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

/// Quadratic forms shared by the three kernels at a fixed s = cos θ.
struct KernelFrame {
    double s_form;   // ⟨x,t⟩_s = x² + t² − 2xts
    double ys_form;  // ⟨x,t⟩_{y,s} = y² + ⟨x,t⟩_s
    double delta1;   // ⟨x,t⟩_s − ⟨x,x0⟩_s = (t − x0)(t + x0 − 2xs)

    static KernelFrame make(double x, double t, double x0, double y, double s);
};

struct HalfPlanePoint {
    double x;
    double y;
    HalfPlanePoint(double x_, double y_);
};

/// Per-λ evaluator of the s-integral
///     S_σ(g, B) = ∫_{-1}^{1} (1 + σs)(1 − s²)^{λ−1} (g + B(1 − s))^{−λ−1} ds,
/// σ = sgn(xt), B = 2|xt|, g = y² + (|x| − |t|)².
/// With u = 1 − s and ε = g/B this is B^{−λ−1} T_σ(ε), where
///     T_σ(ε) = ∫_0^2 u^{λ−1}(2 − u)^{λ−1} φ_σ(u) (ε + u)^{−λ−1} du.
/// T_σ is computed directly by Gauss–Jacobi rules (reference path) and
/// tabulated as piecewise Chebyshev series of log T_σ in log ε (fast path).
class KernelEngine {
public:
    explicit KernelEngine(double lambda);

    /// Shared engine for p.lambda() (built once, immutable).
    static std::shared_ptr<const KernelEngine> get(const DunklParam& p);

    double lambda() const noexcept { return lambda_; }
    /// K_λ = λΓ(λ+1/2)2^{λ+1/2}/π, the prefactor of all three kernels.
    double prefactor() const noexcept { return prefactor_; }

    double reduced(int sigma, double eps) const;
    double reduced_direct(int sigma, double eps) const;

    double s_integral(int sigma, double g, double B) const;
    double s_integral_direct(int sigma, double g, double B) const;

    // Unchecked kernels: no diagonal guard, caller keeps away from t = x (y = 0).
    double hilbert(double x, double t) const;
    double poisson(double x, double y, double t) const;
    double conj_poisson(double x, double y, double t) const;

private:
    static constexpr double tau_lo = -40.0;
    static constexpr double tau_hi = 40.0;
    static constexpr double tau_step = 2.0;
    static constexpr int cheb_degree = 24;
    static constexpr int segments = 40;

    double lambda_;
    double prefactor_;
    double beta_half_;    // B(1/2, λ)
    double beta_3half_;   // B(3/2, λ)
    int inner_n_;
    std::shared_ptr<const QuadRule> gegenbauer_;
    std::shared_ptr<const QuadRule> left_;   // weight (1+v)^{λ−1}
    std::shared_ptr<const QuadRule> right_;  // weight (1−v)^{λ−1}
    std::shared_ptr<const QuadRule> legendre_;
    // table_[σ>0][segment][coefficient]
    std::array<std::vector<std::array<double, cheb_degree + 1>>, 2> table_;

    double s_from_reduced(int sigma, double g, double B, bool direct) const;
};

/// h(x,t) of the λ-Hilbert transform.
double hilbert_kernel(const DunklParam& p, double x, double t);
/// (τ_x P_y)(−t).
double poisson_kernel(const DunklParam& p, double x, double y, double t);
/// (τ_x Q_y)(−t); equals hilbert_kernel at y = 0.
double conj_poisson_kernel(const DunklParam& p, double x, double y, double t);

/// Compactly supported bounded input for the kernel integrals.
struct Source {
    double lo;
    double hi;
    std::function<double(double)> f;

    static Source from(const Atom& a);
    static Source from(const GridFunction& g);
};

/// Pa, Qa and H_λ a for a fixed source; reuses the engine across calls.
class FieldEvaluator {
public:
    FieldEvaluator(const DunklParam& p, Source src);

    const DunklParam& param() const noexcept { return param_; }
    const Source& source() const noexcept { return src_; }

    double poisson(double x, double y) const;
    double conj_poisson(double x, double y) const;
    double hilbert(double x) const;

private:
    enum class Kind { poisson, conj, hilbert };
    double integrate(Kind kind, double x, double y) const;
    double kernel(Kind kind, double x, double y, double t) const;

    DunklParam param_;
    Source src_;
    std::shared_ptr<const KernelEngine> engine_;
};

double poisson_integral(const Atom& a, const DunklParam& p, HalfPlanePoint pt);
double poisson_integral(const GridFunction& f, const DunklParam& p, HalfPlanePoint pt);
double conj_poisson_integral(const Atom& a, const DunklParam& p, HalfPlanePoint pt);
double conj_poisson_integral(const GridFunction& f, const DunklParam& p, HalfPlanePoint pt);
double hilbert_transform(const Atom& a, const DunklParam& p, double x);
double hilbert_transform(const GridFunction& f, const DunklParam& p, double x);

/// D_x f = f'(x) + (λ/x)(f(x) − f(−x)), f' by central difference.
double dunkl_derivative(const std::function<double(double)>& f, const DunklParam& p, double x, double h);

using Field = std::function<double(double, double)>;

/// (D_x u − ∂_y v, ∂_y u + D_x v) at pt by central differences with step h.
std::pair<double, double> cauchy_riemann_residual(const Field& u, const Field& v, const DunklParam& p,
                                                  HalfPlanePoint pt, double h);

}  // namespace dunkl
