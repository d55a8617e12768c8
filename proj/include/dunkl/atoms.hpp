#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dunkl/special.hpp"

namespace dunkl {

/// I(x0, δ0) = {x : |x - x0| < δ0} with δ0 < |x0|/2, so 0 is never inside.
class Interval {
public:
    Interval(double x0, double delta0);

    double x0() const noexcept { return x0_; }
    double delta0() const noexcept { return delta0_; }
    double lo() const noexcept { return x0_ - delta0_; }
    double hi() const noexcept { return x0_ + delta0_; }
    bool contains(double t) const noexcept { return std::abs(t - x0_) < delta0_; }

    Interval dilated(double c) const { return Interval(c * x0_, c * delta0_); }
    Interval reflected() const { return Interval(-x0_, delta0_); }

private:
    double x0_;
    double delta0_;
};

/// Polynomial p_λ-atom on an interval. The coefficients are in the local
/// variable v = (t - x0)/δ0:  a(t) = Σ_k coeffs[k] v^k  for |v| < 1.
class Atom {
public:
    Atom(DunklParam param, double exponent_p, Interval interval, int kappa, std::vector<double> coeffs,
         double sup_bound);

    const DunklParam& param() const noexcept { return param_; }
    double p() const noexcept { return p_; }
    const Interval& interval() const noexcept { return interval_; }
    int kappa() const noexcept { return kappa_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    double sup_bound() const noexcept { return sup_bound_; }

    double operator()(double t) const noexcept;
    // Polynomial in v, ignoring the support cut-off.
    double poly(double v) const noexcept;

private:
    DunklParam param_;
    double p_;
    Interval interval_;
    int kappa_;
    std::vector<double> coeffs_;
    double sup_bound_;
};

/// c_λ ∫_I |x|^{2λ} dx.
double interval_measure(const DunklParam& p, const Interval& I);

/// κ = 2⌊(2λ+1)(1-p)/p⌋ for 2λ/(2λ+1) < p <= 1.
int min_vanishing_order(double lambda, double p);

/// Degree κ+1 polynomial on I orthogonal to 1..t^κ in L²(|t|^{2λ}dt), scaled
/// so that sup_I |a| = |I|_λ^{-1/p}.
Atom make_atom(const DunklParam& p, double exponent_p, const Interval& I, int kappa);

double atom_eval(const Atom& a, double t);

/// sup over the closed interval (dense sampling plus critical points).
double atom_sup(const Atom& a);

/// c_λ ∫ t^k a(t) |t|^{2λ} dt and c_λ ∫ |t^k a(t)| |t|^{2λ} dt.
double atom_moment(const Atom& a, int k);
double atom_abs_moment(const Atom& a, int k);

/// Same atom construction on the dilated interval (c x0, c δ0).
Atom dilate(const Atom& a, double c);

struct AtomicRepresentation {
    std::vector<std::pair<double, Atom>> terms;
};

/// (Σ|λ_k|^p)^{1/p}; 0 for an empty representation.
double quasinorm_upper(const AtomicRepresentation& r, double p);

/// {lambda, p, x0, delta0, kappa, coeffs, sup_bound} in that order.
std::string atom_to_json(const Atom& a);
Atom atom_from_json(const std::string& text);

}  // namespace dunkl
