#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dunkl/quadrature.hpp"
#include "dunkl/special.hpp"

namespace dunkl {

/// Bounded real function on a compact support; zero outside it.
class GridFunction {
public:
    GridFunction(double lo, double hi, std::function<double(double)> f, std::string description = {});

    double operator()(double x) const { return (x < lo_ || x > hi_) ? 0.0 : f_(x); }
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    bool bounded() const noexcept { return std::isfinite(lo_) && std::isfinite(hi_); }
    const std::string& description() const noexcept { return description_; }

private:
    double lo_;
    double hi_;
    std::function<double(double)> f_;
    std::string description_;
};

/// (F_λ f)(ξ) sampled on an increasing grid. When the grid came from a
/// quadrature rule, `weights` integrates g ↦ ∫ g(ξ)|ξ|^{2λ} dξ on it.
struct SpectralFunction {
    std::vector<double> xi_grid;
    std::vector<std::complex<double>> values;
    DunklParam param;
    std::vector<double> weights;
    bool flagged = false;  // node cap hit before convergence at some ξ
};

/// c_λ ∫ f(x) E_λ(-ixξ) |x|^{2λ} dx, refined by node doubling per ξ.
SpectralFunction dunkl_transform(const GridFunction& f, const DunklParam& p, std::span<const double> xi_grid);

/// Transform sampled on the nodes of a rule for |ξ|^{2λ}dξ (keeps weights).
SpectralFunction dunkl_transform(const GridFunction& f, const DunklParam& p, const QuadRule& xi_rule);

/// c_λ ∫ g(ξ) E_λ(ixξ) |ξ|^{2λ} dξ over the sampled window. Throws
/// TruncationError when the decay fit leaves a tail above tol.
std::vector<std::complex<double>> inverse_dunkl_transform(const SpectralFunction& g, std::span<const double> x_grid,
                                                          double tol = 1e-8);

/// Symmetric ξ window [-R, R] outside which |F_λ f| has dropped below
/// tol relative to its peak; throws TruncationError if none up to xi_cap.
double spectral_cutoff(const GridFunction& f, const DunklParam& p, double tol = 1e-12, double xi_cap = 2048.0);

/// τ_y f(x) = c_λ ∫ F_λf(ξ) E_λ(ixξ) E_λ(iyξ) |ξ|^{2λ} dξ.
std::vector<double> lambda_translation(const GridFunction& f, const DunklParam& p, double y,
                                       std::span<const double> x_grid);

/// (f *_λ g)(x) = c_λ ∫ f(t) τ_x g(-t) |t|^{2λ} dt.
double lambda_convolution(const GridFunction& f, const GridFunction& g, const DunklParam& p, double x);
std::vector<double> lambda_convolution(const GridFunction& f, const GridFunction& g, const DunklParam& p,
                                       std::span<const double> x_grid);

}  // namespace dunkl
