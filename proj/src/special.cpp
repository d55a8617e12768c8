#include "dunkl/special.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace dunkl {

namespace {

constexpr double pi = std::numbers::pi;

// Lanczos coefficients, g = 7, n = 9.
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double xm1) {
    double a = lanczos_c[0];
    for (std::size_t i = 1; i < lanczos_c.size(); ++i) a += lanczos_c[i] / (xm1 + static_cast<double>(i));
    return a;
}

// Minimal double-double arithmetic for the Bessel power series.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD operator+(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

DD operator-(DD a) { return {-a.hi, -a.lo}; }

DD operator*(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

DD operator*(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

DD operator/(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = a + (-(b * q1));
    double q2 = r.hi / b.hi;
    r = r + (-(b * q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return q + DD{q3, 0.0};
}

constexpr double series_limit = 25.0;

double bessel_series(double alpha, double z) {
    DD half = {0.5 * z, 0.0};
    DD q = half * half;
    DD term{1.0, 0.0};
    DD sum{1.0, 0.0};
    double biggest = 1.0;
    for (int n = 1; n < 500; ++n) {
        double dn = n;
        DD den = two_sum(dn, alpha) * dn;
        term = -(term * (q / den));
        sum = sum + term;
        double mag = std::abs(term.hi);
        if (mag > biggest) biggest = mag;
        if (den.hi > q.hi && mag < 1e-33 * biggest) break;
    }
    return sum.hi + sum.lo;
}

// Hankel expansion. Returns false when the series does not get small enough.
bool bessel_asymptotic(double alpha, double z, double& out) {
    double mu = 4.0 * alpha * alpha;
    double P = 1.0;
    double Q = 0.0;
    double ak = 1.0;
    double prev = 1.0;
    bool converged = false;
    for (int k = 1; k < 200; ++k) {
        double odd = 2.0 * k - 1.0;
        ak *= (mu - odd * odd) / (8.0 * k * z);
        double mag = std::abs(ak);
        if (ak == 0.0) {
            converged = true;
            break;
        }
        if (k > 2 && mag > prev) break;
        // (-1)^{k/2} on even k into P, (-1)^{(k-1)/2} on odd k into Q
        switch (k % 4) {
            case 0: P += ak; break;
            case 1: Q += ak; break;
            case 2: P -= ak; break;
            case 3: Q -= ak; break;
        }
        prev = mag;
        if (mag < 1e-17) {
            converged = true;
            break;
        }
    }
    if (!converged) return false;
    double phi = (0.5 * alpha + 0.25) * pi;
    double cz = std::cos(z), sz = std::sin(z);
    double cp = std::cos(phi), sp = std::sin(phi);
    double cw = cz * cp + sz * sp;
    double sw = sz * cp - cz * sp;
    double J = std::sqrt(2.0 / (pi * z)) * (P * cw - Q * sw);
    out = std::exp(log_gamma(alpha + 1.0) + alpha * std::log(2.0 / z)) * J;
    return true;
}

}  // namespace

DunklParam::DunklParam(double lambda) : DunklParam(lambda, false) {}

DunklParam::DunklParam(double lambda, bool allow_zero) : lambda_(lambda), c_lambda_(0.0) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be a finite value >= 0");
    if (lambda == 0.0 && !allow_zero) throw DomainError("lambda = 0 is only accepted in test mode");
    c_lambda_ = dunkl_constant(lambda);
}

DunklParam DunklParam::test_mode(double lambda) { return DunklParam(lambda, true); }

void DunklParam::require_positive(const char* where) const {
    if (!(lambda_ > 0.0)) throw DomainError(std::string(where) + ": requires lambda > 0");
}

double gamma(double x) {
    if (!(x > 0.0)) throw DomainError("gamma: argument must be > 0");
    if (x < 0.5) return pi / (std::sin(pi * x) * gamma(1.0 - x));
    double xm1 = x - 1.0;
    double t = xm1 + lanczos_g + 0.5;
    double half = std::pow(t, 0.5 * (xm1 + 0.5));
    return std::sqrt(2.0 * pi) * half * std::exp(-t) * half * lanczos_sum(xm1);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be > 0");
    if (x < 0.5) return std::log(pi / std::sin(pi * x)) - log_gamma(1.0 - x);
    double xm1 = x - 1.0;
    double t = xm1 + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double beta(double a, double b) {
    if (a + b < 100.0) return gamma(a) * gamma(b) / gamma(a + b);
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double bessel_j_norm(double alpha, double z) {
    if (!(alpha >= -0.5)) throw DomainError("bessel_j_norm: alpha must be >= -1/2");
    if (!std::isfinite(z)) throw DomainError("bessel_j_norm: z must be finite");
    z = std::abs(z);
    if (z == 0.0) return 1.0;
    if (z > series_limit) {
        double v;
        if (bessel_asymptotic(alpha, z, v)) return v;
    }
    return bessel_series(alpha, z);
}

std::complex<double> dunkl_kernel(const DunklParam& p, double z) {
    double lam = p.lambda();
    double re = bessel_j_norm(lam - 0.5, z);
    double im = z / (2.0 * lam + 1.0) * bessel_j_norm(lam + 0.5, z);
    return {re, im};
}

BesselTable::BesselTable(double alpha) : alpha_(alpha), coeffs_(segments) {
    if (!(alpha >= -0.5)) throw DomainError("BesselTable: alpha must be >= -1/2");
    constexpr int N = degree + 1;
    for (int k = 0; k < segments; ++k) {
        double mid = (k + 0.5) * width;
        std::array<double, N> f{};
        for (int j = 0; j < N; ++j)
            f[j] = bessel_j_norm(alpha, mid + 0.5 * width * std::cos(std::numbers::pi * (j + 0.5) / N));
        for (int m = 0; m < N; ++m) {
            double s = 0.0;
            for (int j = 0; j < N; ++j) s += f[j] * std::cos(std::numbers::pi * m * (j + 0.5) / N);
            coeffs_[k][m] = 2.0 * s / N;
        }
    }
}

double BesselTable::operator()(double z) const {
    z = std::abs(z);
    if (!(z < segments * width)) return bessel_j_norm(alpha_, z);
    int k = static_cast<int>(z / width);
    double x = (z - (k + 0.5) * width) / (0.5 * width);
    const auto& c = coeffs_[k];
    double b1 = 0.0, b2 = 0.0;
    for (int m = degree; m >= 1; --m) {
        double b0 = c[m] + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return 0.5 * c[0] + x * b1 - b2;
}

DunklKernelTable::DunklKernelTable(const DunklParam& p)
    : even_(p.lambda() - 0.5), odd_(p.lambda() + 0.5), scale_(1.0 / (2.0 * p.lambda() + 1.0)) {}

std::shared_ptr<const DunklKernelTable> DunklKernelTable::get(const DunklParam& p) {
    static std::mutex mutex;
    static std::map<double, std::shared_ptr<const DunklKernelTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[p.lambda()];
    if (!slot) slot = std::make_shared<const DunklKernelTable>(p);
    return slot;
}

double dunkl_constant(double lambda) {
    if (!(lambda >= 0.0)) throw DomainError("dunkl_constant: lambda must be >= 0");
    return 1.0 / (std::pow(2.0, lambda + 0.5) * gamma(lambda + 0.5));
}

}  // namespace dunkl
