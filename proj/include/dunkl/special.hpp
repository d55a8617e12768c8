#pragma once

#include <array>
#include <complex>
#include <memory>
#include <vector>

#include "dunkl/error.hpp"

namespace dunkl {

/// Multiplicity parameter λ with its cached normalization c_λ.
///
/// Production code requires λ > 0. λ = 0 (the classical Fourier case) is
/// admitted only through DunklParam::test_mode.
class DunklParam {
public:
    explicit DunklParam(double lambda);
    static DunklParam test_mode(double lambda);

    double lambda() const noexcept { return lambda_; }
    double c_lambda() const noexcept { return c_lambda_; }
    bool is_classical() const noexcept { return lambda_ == 0.0; }

    // Throws DomainError unless λ > 0.
    void require_positive(const char* where) const;

    friend bool operator==(const DunklParam&, const DunklParam&) = default;

private:
    DunklParam(double lambda, bool allow_zero);
    double lambda_;
    double c_lambda_;
};

/// Γ(x) for x > 0 (Lanczos, g = 7).
double gamma(double x);

/// log Γ(x) for x > 0.
double log_gamma(double x);

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
double beta(double a, double b);

/// Normalized Bessel function j_α(z) = Γ(α+1)(2/z)^α J_α(z), α ≥ −1/2.
///
/// Power series summed in double-double for |z| ≤ 25, Hankel asymptotic
/// expansion above.
double bessel_j_norm(double alpha, double z);

/// E_λ(iz) = j_{λ−1/2}(z) + i z/(2λ+1) j_{λ+1/2}(z).
std::complex<double> dunkl_kernel(const DunklParam& p, double z);

/// j_α tabulated as piecewise Chebyshev series on |z| <= 25, built once
/// from bessel_j_norm; larger |z| falls through to bessel_j_norm.
class BesselTable {
public:
    explicit BesselTable(double alpha);
    double alpha() const noexcept { return alpha_; }
    double operator()(double z) const;

private:
    static constexpr int degree = 16;
    static constexpr double width = 0.5;
    static constexpr int segments = 50;
    double alpha_;
    std::vector<std::array<double, degree + 1>> coeffs_;
};

/// E_λ(iz) through two BesselTables; shared per λ.
class DunklKernelTable {
public:
    explicit DunklKernelTable(const DunklParam& p);
    static std::shared_ptr<const DunklKernelTable> get(const DunklParam& p);
    std::complex<double> operator()(double z) const {
        return {even_(z), z * scale_ * odd_(z)};
    }

private:
    BesselTable even_;
    BesselTable odd_;
    double scale_;
};

/// c_λ = 1/(2^{λ+1/2} Γ(λ+1/2)), λ ≥ 0.
double dunkl_constant(double lambda);

}  // namespace dunkl
