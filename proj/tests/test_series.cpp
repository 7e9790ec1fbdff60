#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"

using namespace phx;
using phx::test::radial;
using phx::test::rc;

TEST_CASE("series_mul small products")
{
    auto a = radial({{0, 0, 1}, {1, 0, 1}});
    auto b = radial({{0, 0, 1}, {1, 0, -1}});
    CHECK(series_mul(a, b).same_terms(radial({{0, 0, 1}, {2, 0, -1}})));

    auto tl = radial({{1, 1, 1}});
    CHECK(series_mul(tl, tl).same_terms(radial({{2, 2, 1}})));

    auto one_tl = radial({{0, 0, 1}, {1, 1, 1}});
    CHECK(series_mul(one_tl, one_tl).same_terms(radial({{0, 0, 1}, {1, 1, 2}, {2, 2, 1}})));
}

TEST_CASE("series_mul truncates at the exact weight")
{
    auto a = radial({{0, 0, 1}, {1, 0, 1}}, 3);
    auto b = radial({{0, 0, 1}, {2, 0, 1}}, 5);
    auto p = series_mul(a, b);
    CHECK(p.order() == 3);
    CHECK(p.same_terms(radial({{0, 0, 1}, {1, 0, 1}, {2, 0, 1}, {3, 0, 1}})));

    // t * (something known to order 3) is known to order 4
    auto t = radial({{1, 0, 1}});
    CHECK(series_mul(t, a).order() == 4);
}

TEST_CASE("series_ddt")
{
    CHECK(series_ddt(radial({{2, 1, 1}})).same_terms(radial({{1, 1, 2}, {1, 0, 1}})));
    CHECK(series_ddt(radial({{3, 0, 1}})).same_terms(radial({{2, 0, 3}})));
    auto d = series_ddt(radial({{4, 2, 1}}));
    CHECK(d.same_terms(radial({{3, 2, 4}, {3, 1, 2}})));

    auto f = [](double t) { return std::pow(t, 4) * std::pow(std::log(t), 2); };
    const double t = 0.1, h = 1e-4;
    const double fd = (f(t - 2 * h) - 8 * f(t - h) + 8 * f(t + h) - f(t + 2 * h)) / (12 * h);
    CHECK(std::abs(to_float(d).eval(t) - fd) < 1e-10);

    CHECK_THROWS_AS(series_ddt(radial({{1, 1, 1}})), DomainError);
    CHECK(series_ddt(radial({{0, 0, 7}})).zero());
}

TEST_CASE("bare logs are rejected")
{
    LogSeries s(0, kExact);
    CHECK_THROWS_AS(s.add(0, 1, TangentialPoly::constant(0, kExact, 1)), DomainError);
}

TEST_CASE("weighted_antideriv monomials")
{
    CHECK(weighted_antideriv(radial({{3, 0, 1}}), 0).same_terms(radial({{5, 0, Q(1, 5)}})));
    CHECK(weighted_antideriv(radial({{1, 0, 1}}), 3).same_terms(radial({{3, 1, 1}})));
    for (int mb = 3; mb <= 7; ++mb)
        CHECK(weighted_antideriv(radial({{mb - 2, 1, 1}}), mb).same_terms(radial({{mb, 2, Q(1, 2)}})));
    CHECK_THROWS_AS(weighted_antideriv(radial({{0, 0, 1}}), 3), DomainError);
}

TEST_CASE("weighted_antideriv: integration by parts leading coefficient")
{
    // t^2 log^2 t, mu = 0: t^4 [log^2/4 - 2 log/16 + 2/64]
    auto w = weighted_antideriv(radial({{2, 2, 1}}), 0);
    CHECK(w.same_terms(radial({{4, 2, Q(1, 4)}, {4, 1, Q(-1, 8)}, {4, 0, Q(1, 32)}})));
    // numeric check of the defining integral at t = 0.3
    const double t = 0.3;
    double acc = 0;
    const int N = 200000;
    for (int k = 0; k < N; ++k) {
        const double r = (k + 0.5) * t / N;
        acc += r * r * r * std::pow(std::log(r), 2) * t / N;
    }
    CHECK(std::abs(to_float(w).eval(t) - acc) / std::abs(acc) < 1e-8);
}

TEST_CASE("weighted_antideriv is a right inverse of the Euler operator")
{
    // w = (wad(f, mb) - wad(f, ml)) / (mb - ml) solves L0 w = f
    for (auto [ml, mb] : {std::pair{0, 4}, {0, 5}, {-1, 3}, {-1, 6}, {-2, 3}}) {
        const int p = 1 - (ml + mb), q = ml * mb;
        for (int m = std::max(0, mb - 2); m <= mb + 4; ++m)
            for (int j = 0; j <= 2; ++j) {
                if (m == 0 && j > 0) continue;
                auto f = radial({{m, j, Q(3, 7)}});
                auto w = (weighted_antideriv(f, mb) - weighted_antideriv(f, ml)) * Q(1, mb - ml);
                auto back = apply_euler_operator(w, p, q);
                CHECK(back.same_terms(f));
                // log degree grows by at most one, only at resonance
                const int grown = w.max_log() - j;
                CHECK(grown <= (m == mb - 2 || m == ml - 2 ? 1 : 0));
            }
    }
}

TEST_CASE("compose_analytic")
{
    const int K = 8;
    auto t = radial({{1, 0, 1}}, K);
    auto g = compose_analytic(TaylorData::geometric(K), {t});
    LogSeries expect(0, K);
    for (int i = 0; i <= K; ++i) expect.add(i, 0, TangentialPoly::constant(0, kExact, 1));
    CHECK(g.same_terms(expect));

    auto y = radial({{1, 0, 1}, {1, 1, 1}});
    TaylorData sq;
    sq.nvars = 1;
    sq.degree = 2;
    sq.polynomial = true;
    sq.coeffs[{2}] = 1;
    CHECK(compose_analytic(sq, {y}).same_terms(series_mul(y, y)));
    CHECK(compose_analytic(sq, {y}).same_terms(radial({{2, 0, 1}, {2, 1, 2}, {2, 2, 1}})));

    TaylorData bil;
    bil.nvars = 2;
    bil.degree = 2;
    bil.polynomial = true;
    bil.coeffs[{1, 1}] = 1;
    auto s = radial({{0, 0, 2}, {3, 0, -1}});
    CHECK(compose_analytic(bil, {t, s}).same_terms(series_mul(t, s)));

    auto big = radial({{0, 0, 2}});
    CHECK_THROWS_AS(compose_analytic(TaylorData::geometric(K), {big}), DomainError);
}

TEST_CASE("binomial Taylor data")
{
    auto b = TaylorData::binomial(Q(-1, 2), 4);
    CHECK(b.coeffs.at({2}) == Q(3, 8));
    CHECK(b.coeffs.at({3}) == Q(-5, 16));
    auto c = TaylorData::binomial(5, 9);
    CHECK(c.polynomial);
    CHECK(c.coeffs.count({6}) == 0);
    CHECK(c.coeffs.at({5}) == 1);
}

TEST_CASE("two-variable lift")
{
    auto a = radial({{2, 1, 1}});
    auto l = two_var_lift(a);
    CHECK(l.coeffs().size() == 1);
    CHECK(l.coeffs().count({1, 1}) == 1);
    auto lam = collapse(lambda_apply(l));
    CHECK(lam.same_terms(radial({{2, 0, 1}, {2, 1, 2}})));

    auto b = radial({{4, 2, 1}});
    CHECK(collapse(lambda_apply(two_var_lift(b))).same_terms(series_ddt(b).shift(1)));
    CHECK(collapse(lambda_apply(two_var_lift(radial({{3, 0, 1}})))).same_terms(radial({{3, 0, 3}})));
    CHECK_THROWS_AS(two_var_lift(radial({{1, 2, 1}})), DomainError);
}

namespace {

LogSeries random_series(std::mt19937& rng, int dim, int order)
{
    std::uniform_int_distribution<int> coef(-5, 5), pw(1, order), lg(0, 2), ex(0, 2);
    LogSeries s(dim, order);
    for (int n = 0; n < 6; ++n) {
        const int i = pw(rng);
        const int j = std::min(lg(rng), i - 1);
        TangentialPoly p(dim, s.cap(i));
        std::vector<int> e(dim);
        for (auto& x : e) x = ex(rng);
        Q c(coef(rng), 1 + std::abs(coef(rng)));
        c.canonicalize();
        p.add_term(make_mono(e), c);
        s.add(i, j, p);
    }
    return s;
}

}  // namespace

TEST_CASE("ring laws on random series")
{
    std::mt19937 rng(12345);
    for (int rep = 0; rep < 30; ++rep) {
        auto a = random_series(rng, 2, 7), b = random_series(rng, 2, 6), c = random_series(rng, 2, 8);
        CHECK(series_mul(a, b) == series_mul(b, a));
        auto l = series_mul(series_mul(a, b), c), r = series_mul(a, series_mul(b, c));
        const int o = std::min(l.order(), r.order());
        l.truncate(o);
        r.truncate(o);
        CHECK(l == r);
        auto d1 = series_mul(a, b + c), d2 = series_mul(a, b) + series_mul(a, c);
        const int o2 = std::min(d1.order(), d2.order());
        d1.truncate(o2);
        d2.truncate(o2);
        CHECK(d1 == d2);

        auto back = collapse(two_var_lift(a));
        CHECK(back == a);
        auto lhs = collapse(lambda_apply(two_var_lift(a)));
        auto rhs = series_ddt(a).shift(1);
        CHECK(lhs.same_terms(rhs));
    }
}

TEST_CASE("symbolic vs floating evaluation")
{
    std::mt19937 rng(7);
    const std::vector<double> x = {0.2, -0.1};
    for (int rep = 0; rep < 10; ++rep) {
        auto a = random_series(rng, 2, 9), b = random_series(rng, 2, 9);
        auto fa = to_float(a), fb = to_float(b);
        auto ab = to_float(series_mul(a, b));
        auto fab = series_mul(fa, fb);
        for (double t : {0.3, 0.1, 0.03}) {
            // untruncated product of the two finite sums, restricted to the kept weights
            const double direct = fab.eval(t, x);
            CHECK(std::abs(ab.eval(t, x) - direct) <= 1e-9 * (1 + std::abs(direct)));
        }
    }
}
