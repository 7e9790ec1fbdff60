#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "singular_ode.hpp"

using namespace phx;
using phx::test::radial;
using phx::test::rc;

TEST_CASE("indicial roots")
{
    CHECK(indicial_roots(-4, 0) == std::pair{0, 5});
    CHECK(indicial_roots(-1, -3) == std::pair{-1, 3});
    CHECK(indicial_roots(-3, 0) == std::pair{0, 4});
    for (int a = -4; a <= 0; ++a)
        for (int b = 3; b <= 9; ++b) CHECK(indicial_roots(1 - (a + b), a * b) == std::pair{a, b});
    CHECK_THROWS_AS(indicial_roots(0, 1), DomainError);   // complex
    CHECK_THROWS_AS(indicial_roots(0, -1), DomainError);  // irrational
    CHECK_THROWS_AS(indicial_roots(-4, 4), DomainError);  // roots (1, 4)
    CHECK_THROWS_AS(indicial_roots(-1, 0), DomainError);  // roots (0, 2)
}

TEST_CASE("reduce_order")
{
    auto nf4 = NormalForm::from_roots(0, 4);
    auto c = reduce_order(nf4, 1);
    CHECK(c.p_l == -1);
    CHECK(c.q_l == -3);
    auto c0 = reduce_order(nf4, 0);
    CHECK(c0.p_l == nf4.p);
    CHECK(c0.q_l == nf4.q);
    auto nf5 = NormalForm::from_roots(0, 5);
    auto c3 = reduce_order(nf5, 3);
    CHECK(c3.p_l == 2);
    CHECK(c3.q_l == -6);
    CHECK_THROWS_AS(reduce_order(nf5, 4), DomainError);
    CHECK_THROWS_AS(reduce_order(nf5, -1), DomainError);
    for (int a = -3; a <= 0; ++a)
        for (int b = 3; b <= 8; ++b)
            for (int l = 0; l <= b - 2; ++l) CHECK_NOTHROW(reduce_order(NormalForm::from_roots(a, b), l));
}

TEST_CASE("chain step matches the reduced operator")
{
    // L_l u_l = d^l (L_0 u) on a test series
    auto nf = NormalForm::from_roots(-1, 4);
    auto u = radial({{1, 0, 2}, {2, 0, 1}, {3, 0, -3}, {4, 0, 5}, {4, 1, 2}, {6, 1, Q(1, 3)}});
    FreeLogSeries F(apply_euler_operator(u, nf.p, nf.q));
    for (int l = 0; l <= 2; ++l) {
        auto ch = reduce_order(nf, l);
        auto ul = reduce_series(u, l);
        // L_l u_l computed directly on the free representation
        FreeLogSeries lhs = ul.ddt().ddt();
        const auto d1 = ul.ddt().shift(-1), d0 = ul.shift(-2);
        for (const auto& [k, p] : d1.coeffs()) lhs.add(k.first, k.second, p * Q(ch.p_l));
        for (const auto& [k, p] : d0.coeffs()) lhs.add(k.first, k.second, p * Q(ch.q_l));
        CHECK(lhs.coeffs() == F.coeffs());
        F = F.ddt();
    }
}

TEST_CASE("ode_closed_form")
{
    const auto nf = NormalForm::from_roots(0, 4);
    const double r = 0.5;
    auto u0 = ode_closed_form(nf, [](double) { return 0.0; }, std::pow(r, 4), r);
    for (double t : {0.05, 0.2, 0.45}) CHECK(std::abs(u0(t) - std::pow(t, 4)) < 1e-14);

    auto u1 = ode_closed_form(nf, [](double) { return 1.0; }, -r * r / 4, r);
    for (double t : {0.01, 0.1, 0.3}) CHECK(std::abs(u1(t) + t * t / 4) < 1e-8);

    for (auto [ml, mh] : {std::pair{0, 4}, {-1, 3}, {0, 5}}) {
        const auto f = NormalForm::from_roots(ml, mh);
        const double gap = mh - ml;
        auto exact = [&](double t) { return std::pow(t, mh) * std::log(t) / gap; };
        auto u = ode_closed_form(f, [mh](double s) { return std::pow(s, mh - 2); }, exact(r), r);
        for (double t : {0.02, 0.1, 0.4}) CHECK(std::abs(u(t) - exact(t)) < 1e-8);
    }

    CHECK_THROWS_AS(ode_closed_form(nf, [](double s) { return std::pow(s, -3); }, 0, r), DomainError);
}

TEST_CASE("first nonlocal coefficient, symbolic")
{
    for (int mh = 3; mh <= 7; ++mh) {
        const auto nf = NormalForm::from_roots(0, mh);
        Q fact = 1, harm = 0;
        for (int k = 1; k <= mh - 2; ++k) {
            fact *= k;
            harm += Q(1, k);
        }

        auto a = first_nonlocal_symbolic(nf, radial({{2, 0, 1}, {mh, 0, 5}}));
        CHECK(a.c21.zero());
        CHECK(a.c20.constant_term() == 5 * fact);
        auto [c0, c1] = nonlocal_from_level(nf, a);
        CHECK(c0.constant_term() == 5);
        CHECK(c1.zero());

        auto b = first_nonlocal_symbolic(nf, radial({{mh, 1, 1}}));
        CHECK(b.c21.constant_term() == fact);
        CHECK(b.c20.constant_term() == fact * harm);
        auto [d0, d1] = nonlocal_from_level(nf, b);
        CHECK(d0.zero());
        CHECK(d1.constant_term() == 1);

        // c21 = F_l(0) / (m_high - m_low)
        auto u = radial({{2, 0, 1}, {3, 0, 2}, {mh, 0, 5}, {mh, 1, -3}, {mh + 1, 0, 1}});
        FreeLogSeries F(apply_euler_operator(u, nf.p, nf.q));
        for (int l = 0; l < mh - 2; ++l) F = F.ddt();
        CHECK(first_nonlocal_symbolic(nf, u).c21.constant_term() == F.coeff(0, 0).constant_term() / nf.gap());
    }
    // homogeneous: F == 0 forces no log
    const auto nf = NormalForm::from_roots(-1, 4);
    CHECK(first_nonlocal_symbolic(nf, radial({{4, 0, 1}})).c21.zero());
}

TEST_CASE("first nonlocal coefficient: symbolic, numeric and integral paths agree")
{
    for (auto [ml, mh] : {std::pair{0, 3}, {0, 4}, {-1, 3}, {-1, 4}, {0, 5}}) {
        const auto nf = NormalForm::from_roots(ml, mh);
        LogSeries u = radial({{2, 0, 1}, {mh, 0, Q(5, 4)}, {mh, 1, Q(-3, 2)}, {mh + 1, 0, 1}, {mh + 1, 1, Q(1, 2)}, {mh + 2, 0, -2}});
        if (ml < 0) u += radial({{1, 0, Q(1, 4)}});
        const auto sym = first_nonlocal_symbolic(nf, u);
        const double c21 = sym.c21.constant_term().get_d(), c20 = sym.c20.constant_term().get_d();

        const auto fu = to_float(u);
        const auto num = extract_first_nonlocal(nf, [&](double t) { return fu.eval(t); });
        // a third derivative of double samples sits near 1e-6 already
        const double tol = mh <= 4 ? 1e-6 : 2e-5;
        CHECK(std::abs(num.c21 - c21) < tol);
        CHECK(std::abs(num.c20 - c20) < tol);
        if (ml < 0) continue;  // F_l is singular at 0 once u has a t^1 term

        const int l = mh - 2;
        FreeLogSeries F(apply_euler_operator(u, nf.p, nf.q));
        for (int k = 0; k < l; ++k) F = F.ddt();
        const double r = 0.5;
        const auto ul = reduce_series(u, l);
        const auto in = first_nonlocal_integral(nf, [&](double s) { return F.eval(s); }, F.coeff(0, 0).constant_term().get_d(),
                                                ul.eval(r), r);
        CHECK(std::abs(in.c21 - c21) < 1e-10);
        CHECK(std::abs(in.c20 - c20) < 1e-8);
    }
}

TEST_CASE("reconstruction from chain levels")
{
    auto u = radial({{2, 0, 1}, {3, 0, 3}, {5, 0, -1}, {6, 0, 2}});
    for (int l = 1; l <= 4; ++l) {
        std::vector<TangentialPoly> v0;
        LogSeries v = u.shift(-2);
        for (int i = 0; i < l; ++i) {
            v0.push_back(v.coeff(0, 0));
            v = series_ddt(v);
        }
        CHECK(reconstruct_from_levels(v0, v).same_terms(u));
    }
}
