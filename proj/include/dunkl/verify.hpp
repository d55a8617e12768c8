#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dunkl/atoms.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/special.hpp"

namespace dunkl {

using ParamValue = std::variant<double, std::int64_t, bool, std::string>;
using Params = std::vector<std::pair<std::string, ParamValue>>;

/// One verification outcome. pass ⇔ ratio ≤ 1 + tolerance, truncation_error
/// within 5% of |computed|, no "error" param and every boolean param true.
/// The tolerance is stored in params.
struct VerificationReport {
    std::string name;
    double computed = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    double truncation_error = 0.0;
    bool pass = false;
    Params params;

    const ParamValue* find(const std::string& key) const;
    double number(const std::string& key) const;  // throws if absent or not numeric
};

/// Builds a report, filling ratio, pass and the "tolerance" param. Non-finite
/// inputs produce a failing report with an "error" param and zeros in place.
VerificationReport make_report(std::string name, double computed, double envelope, double truncation_error,
                               double tolerance, Params params = {});

/// Same report judged against another tolerance.
VerificationReport with_tolerance(VerificationReport r, double tolerance);

/// One JSON object on one line, fields in declaration order, reals with 17
/// significant digits.
std::string to_json_line(const VerificationReport& r);

/// Complement of I(x0, 4δ0) ∪ I(-x0, 4δ0).
struct FarFieldRegion {
    double x0;
    double delta0;
    bool contains(double x) const noexcept;
};

struct Operator {
    enum class Kind { hilbert, poisson, conj_poisson };
    Kind kind = Kind::hilbert;
    double y = 0.0;

    static Operator hilbert() { return {Kind::hilbert, 0.0}; }
    static Operator poisson(double y);
    static Operator conj_poisson(double y);
    std::string label() const;
};

/// ∫_I ||x| - |x0||^{-k} dx over region ∩ [-R, R] plus the exact tail, swept
/// over δ0, δ0/2, δ0/4, δ0/8; ratio is the spread of integral·δ^{k-1}.
VerificationReport check_estimate_b(double k, const FarFieldRegion& region, double R);

enum class EstimateVariant { a, c, d };

/// J(b) for variant a: (1+s)(1-s²)^{λ-1}, c: (1-s)(1-s²)^{λ-1}, d: (1-s²)^{λ-1/2},
/// each against (1 - bs)^{-λ-1} on [-1, 1].
double estimate_integral(EstimateVariant v, const DunklParam& p, double b);

/// Fitted C = sup_b J(b)(1 - |b|) compared with 1/λ (a, c) or 2/(2λ+1) (d);
/// passes when the two agree within a factor of 3.
VerificationReport check_estimate_abc_d(EstimateVariant v, const DunklParam& p, std::span<const double> b_grid);

/// b = ±(1 - 10^{-m}) for m in [0, 4] plus 0, sorted.
std::vector<double> default_b_grid();

struct LpResult {
    double integral = 0.0;  // c_λ ∫ |g|^p |x|^{2λ} dx including the tail
    double norm = 0.0;      // integral^{1/p}
    double tail = 0.0;      // part of integral beyond ±R
    double quad_error = 0.0;
};

/// Truncated weighted p-integral of g over [-R, R] (restricted to the region
/// when given) plus a tail from |g(±R)| (R/|x|)^{tail_order}. Panels grade
/// toward the attractors. Requires tail_order·p - 2λ > 1.
LpResult weighted_Lp_seminorm(const std::function<double(double)>& g, double p_exp, const DunklParam& dp,
                              std::optional<FarFieldRegion> region, double R, double tail_order,
                              std::span<const Attractor> attractors = {});

/// Weighted p-integral of |T a| for the atom's (p, λ), near region by direct
/// quadrature and far region against the decay envelope.
LpResult atom_operator_integral(const Atom& a, Operator op);

/// Stability of atom_operator_integral across dilations (y co-scaled).
VerificationReport atom_bound_report(const Atom& a, Operator op, std::span<const double> dilations);

/// |T a(x)| / envelope(x) on the grid, grouped by the two proof cases and the
/// dilation sweep; ratio is the spread of the group maxima.
VerificationReport decay_envelope_check(const Atom& a, Operator op, std::span<const double> x_grid,
                                        std::span<const double> dilations);

/// Default far-field grid: both proof-case regions plus geometric outer points.
std::vector<double> default_far_grid(const Interval& I, double R, std::uint64_t seed);

/// Log-log slope of sup_x |Pa + iQa|(x, y) against y, compared with the
/// claimed -(1/p)(1+2λ).
VerificationReport sup_decay_exponent(const Atom& a, std::span<const double> y_grid);

/// y‖∂_y T a(·, y)‖_{L^p_λ} over the grid; fails when it grows toward either
/// end of the grid by more than 25%.
VerificationReport y_derivative_bound(const Atom& a, Operator op, std::span<const double> y_grid, double p_exp);

struct PaleyOptions {
    double xi_lo = 1e-3;
    double xi_hi = 1e3;
    int xi_count = 2048;
};

/// (2λ+1)(k - 1 - k/p) + 2λ.
double paley_weight_exponent(double lambda, double p, double k);

struct PaleyValue {
    double lhs = 0.0;
    double tail = 0.0;      // |ξ < lo| + |ξ > hi| estimates
    double quad_error = 0.0;
    double small_xi_slope = 0.0;  // of |F_λ f| on [lo, 10 lo]
};

/// ∫_0^∞ |F_λ f(ξ)|^k ξ^w dξ for f = Σ λ_k a_k.
PaleyValue paley_lhs(const AtomicRepresentation& r, const DunklParam& dp, double p_exp, double k,
                     const PaleyOptions& opt = {});

/// LHS/RHS with RHS = quasinorm_upper(r, p)^p, swept over dilations of every
/// atom; ratio is the spread of LHS/RHS across the sweep.
VerificationReport paley_functional(const AtomicRepresentation& r, const DunklParam& dp, double p_exp, double k,
                                    std::span<const double> dilations, const PaleyOptions& opt = {});

/// Small-ξ log slope of |F_λ a| against the moment-forced κ + 1 - 0.1.
VerificationReport paley_small_xi(const Atom& a, const PaleyOptions& opt = {});

/// sup_y c_λ∫|Pf + iQf|^p |x|^{2λ} dx against Σ|λ_k|^p times the single-atom
/// values (the p ≤ 1 triangle inequality).
VerificationReport hp_sum_bound(const AtomicRepresentation& r, std::span<const double> y_grid);

enum class Suite { estimates, atoms, decay, paley, all };

Suite parse_suite(const std::string& name);

/// Sweep sets and parameters of the built-in suites.
struct SuiteConfig {
    double lambda = 1.0;
    double p = 0.8;
    int kappa = 2;  // -1 selects min_vanishing_order
    double x0 = 2.0;
    double delta0 = 0.25;
    std::vector<double> dilations{0.5, 1.0, 2.0, 4.0};
    std::vector<double> y_grid{0.01, 0.1, 1.0, 10.0};
    std::vector<double> estimate_lambdas{0.5, 1.0, 2.0, 4.0};
    std::vector<double> estimate_k{2.0, 3.0};
    std::vector<std::pair<double, double>> sup_decay_params{{1.0, 1.0}, {0.5, 1.0}};
    std::vector<double> paley_p{1.0, 0.8};
    PaleyOptions paley;
    std::uint64_t seed = 0;
    // pass tolerance overrides keyed by report family (the name before ':')
    std::map<std::string, double> tolerances;
};

/// Report families a SuiteConfig tolerance may name.
const std::vector<std::string>& report_families();

/// Runs a suite; reports come back in a fixed order independent of threading.
std::vector<VerificationReport> run_suite(Suite s, const SuiteConfig& cfg);

}  // namespace dunkl
