#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dunkl/atoms.hpp"
#include "dunkl/quadrature.hpp"

using namespace dunkl;

TEST_CASE("Interval validation") {
    CHECK_NOTHROW(Interval(2.0, 0.99));
    CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(Interval(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(Interval(1.0, 0.0), DomainError);
    Interval I(-3.0, 0.5);
    CHECK(I.contains(-3.2));
    CHECK_FALSE(I.contains(-3.5));
    CHECK(I.reflected().x0() == 3.0);
    CHECK(I.dilated(2.0).delta0() == 1.0);
}

TEST_CASE("interval measure") {
    CHECK(interval_measure(DunklParam(0.5), Interval(2.0, 0.5)) == doctest::Approx(1.0).epsilon(1e-14));
    DunklParam p(1.7);
    Interval I(1.3, 0.2);
    double direct = p.c_lambda() * weighted_interval_rule(p, I.lo(), I.hi(), 16).integrate([](double) { return 1.0; });
    CHECK(interval_measure(p, I) == doctest::Approx(direct).epsilon(1e-13));
    CHECK(interval_measure(p, Interval(-1.3, 0.2)) == interval_measure(p, I));
    double prev = interval_measure(p, I);
    for (double d : {0.1, 0.01, 1e-4, 1e-8}) {
        double m = interval_measure(p, Interval(1.3, d));
        CHECK(m < prev);
        prev = m;
    }
    CHECK(prev > 0.0);
    for (double lam : {0.5, 1.0, 3.0}) {
        DunklParam q(lam);
        Interval J(2.0, 0.2);
        CHECK(interval_measure(q, Interval(2.0, 0.8)) <= std::pow(4.0, 2 * lam + 1) * interval_measure(q, J));
    }
}

TEST_CASE("min_vanishing_order") {
    CHECK(min_vanishing_order(1.0, 1.0) == 0);
    CHECK(min_vanishing_order(1.0, 0.7) == 2);
    CHECK(min_vanishing_order(0.5, 0.95) == 0);
    CHECK(min_vanishing_order(1.0, 0.8) == 0);
    CHECK(min_vanishing_order(1.0, 0.75) == 2);
    CHECK_THROWS_AS(min_vanishing_order(1.0, 0.6), DomainError);
    CHECK_THROWS_AS(min_vanishing_order(1.0, 1.1), DomainError);
}

TEST_CASE("atom construction") {
    DunklParam p(1.0);
    Interval I(2.0, 0.5);
    Atom a = make_atom(p, 1.0, I, 0);
    // ∫ a(t) t² dt by an independent Gauss-Legendre rule on the support
    const QuadRule& gl = gauss_legendre(30);
    double m0 = 0.5 * gl.integrate([&](double v) {
        double t = 2.0 + 0.5 * v;
        return a.poly(v) * t * t;
    });
    CHECK(std::abs(m0) < 1e-12);
    CHECK(atom_sup(a) == doctest::Approx(1.0 / interval_measure(p, I)).epsilon(1e-12));
    CHECK(a.sup_bound() == doctest::Approx(atom_sup(a)).epsilon(1e-15));

    Atom b = make_atom(p, 0.7, I, 2);
    double scale = atom_abs_moment(b, 2);
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(atom_moment(b, k)) < 1e-10 * scale);
    CHECK(std::abs(atom_moment(b, 3)) > 1e-6 * atom_abs_moment(b, 3));
    CHECK(atom_sup(b) == doctest::Approx(std::pow(interval_measure(p, I), -1.0 / 0.7)).epsilon(1e-12));
}

TEST_CASE("atom preconditions") {
    DunklParam p(1.0);
    Interval I(2.0, 0.5);
    CHECK_THROWS_AS(make_atom(p, 0.7, I, 0), DomainError);
    CHECK_THROWS_AS(make_atom(p, 0.7, I, 3), DomainError);
    CHECK_THROWS_AS(make_atom(p, 0.6, I, 2), DomainError);
    CHECK_THROWS_AS(make_atom(DunklParam::test_mode(0.0), 1.0, I, 0), DomainError);
    CHECK_THROWS_AS(Atom(p, 1.0, I, 0, {0.0, 0.0}, 1.0), ConstructionError);
    CHECK_THROWS_AS(Atom(p, 1.0, I, 0, {1.0, 2.0, 3.0}, 1.0), ConstructionError);
    CHECK_THROWS_AS(make_atom(p, 1.0, Interval(1.0, 0.49), 40), ConstructionError);
}

TEST_CASE("atom evaluation") {
    DunklParam p(0.5);
    Atom a = make_atom(p, 0.95, Interval(-3.0, 0.4), 0);
    CHECK(atom_eval(a, 0.0) == 0.0);
    CHECK(atom_eval(a, -3.41) == 0.0);
    CHECK(atom_eval(a, -3.0) == a.coeffs()[0]);
    double worst = 0.0;
    for (int i = 0; i <= 10000; ++i) worst = std::max(worst, std::abs(atom_eval(a, -3.4 + 0.8 * i / 10000.0)));
    CHECK(worst <= a.sup_bound() * (1 + 1e-12));
}

TEST_CASE("dilation and reflection keep the atom conditions") {
    DunklParam p(1.0);
    Atom a = make_atom(p, 0.7, Interval(2.0, 0.5), 2);
    for (double c : {0.5, 4.0}) {
        Atom b = dilate(a, c);
        CHECK(b.interval().x0() == 2.0 * c);
        CHECK(b.kappa() == a.kappa());
        double scale = atom_abs_moment(b, 2);
        for (int k = 0; k <= 2; ++k) CHECK(std::abs(atom_moment(b, k)) < 1e-10 * scale);
        // the normalized polynomial is scale-free
        for (std::size_t i = 0; i < a.coeffs().size(); ++i)
            CHECK(b.coeffs()[i] / b.sup_bound() == doctest::Approx(a.coeffs()[i] / a.sup_bound()).epsilon(1e-9));
    }
    Atom r = make_atom(p, 0.7, a.interval().reflected(), 2);
    double scale = atom_abs_moment(r, 2);
    for (int k = 0; k <= 2; ++k) CHECK(std::abs(atom_moment(r, k)) < 1e-10 * scale);
}

TEST_CASE("quasinorm") {
    DunklParam p(1.0);
    Atom a = make_atom(p, 1.0, Interval(2.0, 0.5), 0);
    CHECK(quasinorm_upper({{{1.0, a}}}, 1.0) == 1.0);
    CHECK(quasinorm_upper({{{0.3, a}, {0.7, a}}}, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(quasinorm_upper({{{1.0, a}, {1.0, a}}}, 0.5) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(std::pow(1.0 + 1.0, 0.5) <= std::pow(1.0, 0.5) + std::pow(1.0, 0.5));
    CHECK(quasinorm_upper({}, 0.8) == 0.0);
    CHECK_THROWS_AS(quasinorm_upper({}, 1.5), DomainError);
}

TEST_CASE("atom JSON round trip") {
    Atom a = make_atom(DunklParam(1.0), 0.7, Interval(2.0, 0.5), 2);
    std::string text = atom_to_json(a);
    CHECK(text.rfind("{\"lambda\":", 0) == 0);
    CHECK(text.find("\"p\"") < text.find("\"x0\""));
    CHECK(text.find("\"kappa\"") < text.find("\"coeffs\""));
    Atom b = atom_from_json(text);
    CHECK(atom_to_json(b) == text);
    CHECK(b.coeffs() == a.coeffs());
    CHECK_THROWS_AS(atom_from_json("{\"lambda\": 1}"), DomainError);
}
