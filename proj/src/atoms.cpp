#include "dunkl/atoms.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <json.hpp>

#include "dunkl/quadrature.hpp"

namespace dunkl {

namespace {

bool p_in_range(double lambda, double p) { return p > 2.0 * lambda / (2.0 * lambda + 1.0) && p <= 1.0; }

QuadRule atom_rule(const DunklParam& param, const Interval& I, int kappa) {
    return weighted_interval_rule(param, I.lo(), I.hi(), std::max(32, kappa + 8));
}

double horner(const std::vector<double>& c, double v) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * v + c[k];
    return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

// max |P| on [-1, 1]
double poly_sup(const std::vector<double>& c) {
    constexpr int samples = 4096;
    auto d = derivative(c);
    double best = std::max(std::abs(horner(c, -1.0)), std::abs(horner(c, 1.0)));
    double prev_v = -1.0;
    double prev_d = horner(d, -1.0);
    for (int i = 1; i <= samples; ++i) {
        double v = -1.0 + 2.0 * i / samples;
        best = std::max(best, std::abs(horner(c, v)));
        double dv = horner(d, v);
        if ((prev_d < 0.0 && dv > 0.0) || (prev_d > 0.0 && dv < 0.0)) {
            double a = prev_v, b = v, fa = prev_d;
            for (int it = 0; it < 80; ++it) {
                double m = 0.5 * (a + b);
                double fm = horner(d, m);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            best = std::max(best, std::abs(horner(c, 0.5 * (a + b))));
        }
        prev_v = v;
        prev_d = dv;
    }
    return best;
}

}  // namespace

Interval::Interval(double x0, double delta0) : x0_(x0), delta0_(delta0) {
    if (!std::isfinite(x0) || x0 == 0.0) throw DomainError("Interval: x0 must be finite and nonzero");
    if (!(delta0 > 0.0) || !std::isfinite(delta0)) throw DomainError("Interval: delta0 must be > 0");
    if (!(delta0 < 0.5 * std::abs(x0))) throw DomainError("Interval: delta0 must be < |x0|/2");
}

Atom::Atom(DunklParam param, double exponent_p, Interval interval, int kappa, std::vector<double> coeffs,
           double sup_bound)
    : param_(param), p_(exponent_p), interval_(interval), kappa_(kappa), coeffs_(std::move(coeffs)),
      sup_bound_(sup_bound) {
    param_.require_positive("Atom");
    if (!p_in_range(param_.lambda(), p_)) throw DomainError("Atom: p must lie in (2λ/(2λ+1), 1]");
    if (kappa_ < 0 || kappa_ % 2 != 0) throw DomainError("Atom: kappa must be an even nonnegative integer");
    if (kappa_ < min_vanishing_order(param_.lambda(), p_))
        throw DomainError("Atom: kappa below the minimal vanishing order");
    if (coeffs_.empty() || coeffs_.size() > static_cast<std::size_t>(kappa_) + 2)
        throw ConstructionError("Atom: coefficient count must be in [1, kappa+2]");
    if (std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; }))
        throw ConstructionError("Atom: zero atom");
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw ConstructionError("Atom: non-finite coefficient");
    if (!(sup_bound_ > 0.0) || !std::isfinite(sup_bound_)) throw ConstructionError("Atom: bad sup_bound");
}

double Atom::poly(double v) const noexcept { return horner(coeffs_, v); }

double Atom::operator()(double t) const noexcept {
    if (!interval_.contains(t)) return 0.0;
    return poly((t - interval_.x0()) / interval_.delta0());
}

double interval_measure(const DunklParam& p, const Interval& I) {
    double m = 2.0 * p.lambda() + 1.0;
    double a = std::abs(I.x0()) - I.delta0();
    double b = std::abs(I.x0()) + I.delta0();
    // b^m - a^m without cancellation
    double diff = std::pow(a, m) * std::expm1(m * std::log1p((b - a) / a));
    return p.c_lambda() * diff / m;
}

int min_vanishing_order(double lambda, double p) {
    if (!(lambda >= 0.0)) throw DomainError("min_vanishing_order: lambda must be >= 0");
    if (!p_in_range(lambda, p)) throw DomainError("min_vanishing_order: p must lie in (2λ/(2λ+1), 1]");
    double q = (2.0 * lambda + 1.0) * (1.0 - p) / p;
    return 2 * static_cast<int>(std::floor(q + 1e-12));
}

Atom make_atom(const DunklParam& param, double exponent_p, const Interval& I, int kappa) {
    param.require_positive("make_atom");
    if (!p_in_range(param.lambda(), exponent_p)) throw DomainError("make_atom: p must lie in (2λ/(2λ+1), 1]");
    if (kappa < 0 || kappa % 2 != 0) throw DomainError("make_atom: kappa must be even and >= 0");
    if (kappa < min_vanishing_order(param.lambda(), exponent_p))
        throw DomainError("make_atom: kappa below the minimal vanishing order");

    const int dim = kappa + 2;
    QuadRule rule = atom_rule(param, I, kappa);
    const std::size_t N = rule.size();
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i) v[i] = (rule.nodes[i] - I.x0()) / I.delta0();

    Eigen::MatrixXd gram(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            double s = 0.0;
            for (std::size_t n = 0; n < N; ++n) s += rule.weights[n] * std::pow(v[n], i + j);
            gram(i, j) = s;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    if (!(cond < 1e12) || !(es.eigenvalues().minCoeff() > 0.0))
        throw ConstructionError("make_atom: Gram matrix condition number " + std::to_string(cond) +
                                " exceeds 1e12; use a smaller kappa or higher precision");

    // modified Gram-Schmidt with one re-orthogonalization pass
    std::vector<std::vector<double>> qv, qc;
    auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::size_t n = 0; n < N; ++n) s += rule.weights[n] * a[n] * b[n];
        return s;
    };
    for (int k = 0; k < dim; ++k) {
        std::vector<double> val(N), coef(dim, 0.0);
        for (std::size_t n = 0; n < N; ++n) val[n] = std::pow(v[n], k);
        coef[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                double r = inner(val, qv[j]);
                for (std::size_t n = 0; n < N; ++n) val[n] -= r * qv[j][n];
                for (int m = 0; m < dim; ++m) coef[m] -= r * qc[j][m];
            }
        }
        double norm = std::sqrt(inner(val, val));
        for (auto& x : val) x /= norm;
        for (auto& x : coef) x /= norm;
        qv.push_back(std::move(val));
        qc.push_back(std::move(coef));
    }

    std::vector<double> coeffs = qc.back();
    if (coeffs.back() < 0.0)
        for (auto& c : coeffs) c = -c;
    double target = std::pow(interval_measure(param, I), -1.0 / exponent_p);
    double scale = target / poly_sup(coeffs);
    for (auto& c : coeffs) c *= scale;
    double sup = poly_sup(coeffs);
    return Atom(param, exponent_p, I, kappa, std::move(coeffs), sup);
}

double atom_eval(const Atom& a, double t) { return a(t); }

double atom_sup(const Atom& a) { return poly_sup(a.coeffs()); }

double atom_moment(const Atom& a, int k) {
    QuadRule rule = atom_rule(a.param(), a.interval(), a.kappa() + k);
    return a.param().c_lambda() *
           rule.integrate([&](double t) { return std::pow(t, k) * a.poly((t - a.interval().x0()) / a.interval().delta0()); });
}

double atom_abs_moment(const Atom& a, int k) {
    // |t^k a(t)| has kinks at the zeros of a; panels of a fixed rule converge well enough here
    const Interval& I = a.interval();
    std::vector<double> cuts;
    for (int j = 0; j <= 64; ++j) cuts.push_back(I.lo() + 2.0 * I.delta0() * j / 64.0);
    double lam = a.param().lambda();
    return a.param().c_lambda() * integrate_weighted_panels(
                                      [&](double t) {
                                          return std::abs(std::pow(t, k) * a.poly((t - I.x0()) / I.delta0()));
                                      },
                                      lam, cuts, 16);
}

Atom dilate(const Atom& a, double c) { return make_atom(a.param(), a.p(), a.interval().dilated(c), a.kappa()); }

double quasinorm_upper(const AtomicRepresentation& r, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("quasinorm_upper: p must lie in (0, 1]");
    double s = 0.0;
    for (const auto& [coef, atom] : r.terms) s += std::pow(std::abs(coef), p);
    return std::pow(s, 1.0 / p);
}

std::string atom_to_json(const Atom& a) {
    nlohmann::ordered_json j;
    j["lambda"] = a.param().lambda();
    j["p"] = a.p();
    j["x0"] = a.interval().x0();
    j["delta0"] = a.interval().delta0();
    j["kappa"] = a.kappa();
    j["coeffs"] = a.coeffs();
    j["sup_bound"] = a.sup_bound();
    return j.dump();
}

Atom atom_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return Atom(DunklParam(j.at("lambda").get<double>()), j.at("p").get<double>(),
                    Interval(j.at("x0").get<double>(), j.at("delta0").get<double>()), j.at("kappa").get<int>(),
                    j.at("coeffs").get<std::vector<double>>(), j.at("sup_bound").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("atom_from_json: ") + e.what());
    }
}

}  // namespace dunkl
