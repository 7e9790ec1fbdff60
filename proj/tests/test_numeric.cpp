#include <doctest.h>

#include <cmath>

#include "numeric_validate.hpp"
#include "problems.hpp"

using namespace phx;

namespace {

std::function<double(double)> ball_exact(int n)
{
    return [n](double t) { return std::pow(1 - t / 2, -(n - 2) / 2.0) - 1; };
}

double hemi_exact(double t) { return std::sqrt(1 - t * t) - 1; }

}  // namespace

TEST_CASE("finite differences reproduce the LN ball")
{
    GridSpec spec;
    for (int n : {3, 4, 6}) {
        auto ex = ball_exact(n);
        auto g = fd_solve_richardson(ln_ball_ode(n), ex(spec.t_min), ex(spec.r), spec);
        CHECK(max_error(g, ex) < 1e-8);
        CHECK(g.t.size() == 2000);
        CHECK(g.v.front() == ex(spec.t_min));
        CHECK(g.v.back() == ex(spec.r));
    }
}

TEST_CASE("finite differences reproduce the hemisphere slice")
{
    GridSpec spec;
    for (int n : {3, 4}) {
        auto g = fd_solve_richardson(hemisphere_slice_ode(n, 1), hemi_exact(spec.t_min), hemi_exact(spec.r), spec);
        CHECK(max_error(g, hemi_exact) < 1e-8);
    }
}

TEST_CASE("scheme order")
{
    GridSpec a;
    a.points = 1001;
    GridSpec b = a;
    b.points = 2001;
    auto ex = ball_exact(4);
    const double ea = max_error(fd_solve_radial(ln_ball_ode(4), ex(a.t_min), ex(a.r), a), ex);
    const double eb = max_error(fd_solve_radial(ln_ball_ode(4), ex(b.t_min), ex(b.r), b), ex);
    CHECK(ea / eb >= 3.5);
    CHECK(ea / eb <= 4.5);

    const double ha = max_error(fd_solve_radial(hemisphere_slice_ode(3, 1), hemi_exact(a.t_min), hemi_exact(a.r), a), hemi_exact);
    const double hb = max_error(fd_solve_radial(hemisphere_slice_ode(3, 1), hemi_exact(b.t_min), hemi_exact(b.r), b), hemi_exact);
    CHECK(ha / hb >= 3.5);
    CHECK(ha / hb <= 4.5);
}

TEST_CASE("zero problem and Newton failures")
{
    auto g = fd_solve_radial(linear_ode(NormalForm::from_roots(0, 4)), 0, 0, GridSpec{});
    for (double v : g.v) CHECK(v == 0);
    CHECK(g.residual == 0);

    GridSpec tight;
    tight.max_newton = 1;
    auto ex = ball_exact(3);
    CHECK_THROWS_AS(fd_solve_radial(ln_ball_ode(3), ex(tight.t_min), ex(tight.r), tight), ValidationError);
    GridSpec bad;
    bad.t_min = 1;
    CHECK_THROWS_AS(fd_solve_radial(ln_ball_ode(3), 0, 0, bad), DomainError);
}

TEST_CASE("remainder slopes on exact solutions")
{
    for (int n : {3, 4, 6}) {
        auto in = ln_ball_instance(n, 10);
        auto ser = match_coefficients(in.prob, in.datum);
        auto samples = sample_function([n](const Real& t) { return pow(1 - t / 2, Real(-(n - 2)) / 2) - 1; }, 1e-4);
        std::vector<int> ks;
        for (int k = 1; k <= 8; ++k) ks.push_back(k);
        for (const auto& row : remainder_slopes(samples, ser, ks, 1e-4, 1e-40)) {
            CHECK(row.ok);
            CHECK(row.expected == row.k + 1);
        }
    }
    auto h = hemisphere_instance(3, 1, 12, 0);
    auto ser = match_coefficients(h.prob, h.datum);
    auto samples = sample_function([](const Real& t) { return sqrt(1 - t * t) - 1; }, 1e-4);
    auto rows = remainder_slopes(samples, ser, {3, 4, 10}, 1e-4, 1e-40);
    CHECK(rows[0].expected == 4);
    CHECK(rows[1].expected == 6);
    CHECK(rows[2].expected == 12);
    for (const auto& r : rows) CHECK(r.ok);
}

TEST_CASE("remainder saturation on grid data")
{
    auto in = ln_ball_instance(3, 10);
    auto ser = match_coefficients(in.prob, in.datum);
    auto ex = ball_exact(3);
    auto g = fd_solve_richardson(ln_ball_ode(3), ex(1e-4), ex(0.5), GridSpec{});
    auto rows = remainder_slopes(sample_grid(g), ser, {1, 10}, 1e-4, 1e-9);
    CHECK(rows[0].ok);
    CHECK(rows[1].saturated);
    CHECK(!rows[1].ok);
    CHECK_THROWS_AS(remainder_slopes(sample_grid(g), ser, {1}, 1e-2, 1e-9), DomainError);
}

TEST_CASE("tangential growth")
{
    auto h = hemisphere_instance(3, 1, 4, 10);
    auto fit = tangential_growth_fit(match_coefficients(h.prob, h.datum));
    CHECK(fit.radius >= 0.8);
    CHECK(fit.radius <= 1.25);
    CHECK(fit.norms[2] == doctest::Approx(0.25));

    // boundary graph with phi'' = eps/(1 - 3 y1): radius 1/3
    const int W = 14;
    TangentialPoly phi(2, W);
    Q p3 = 1;
    for (int l = 0; l + 2 <= W; ++l) {
        phi.add_term(make_mono({l + 2, 0}), p3 / ((l + 1) * (l + 2) * 10));
        p3 *= 3;
    }
    auto p = minimal_graph_problem(3, phi, W);
    auto planted = tangential_growth_fit(match_coefficients(p, TangentialPoly(2, W - 4)));
    CHECK(planted.radius >= 0.27);
    CHECK(planted.radius <= 0.40);

    TangentialPoly flat = TangentialPoly::constant(2, 8, Q(-1, 2));
    auto deg = tangential_growth_fit(flat);
    CHECK(deg.degenerate);
    CHECK(std::isinf(deg.radius));

    CHECK_THROWS_AS(tangential_growth_fit(hemisphere_oracle(3, 1, 6)), DomainError);
}

TEST_CASE("negativity margin")
{
    for (int n : {3, 4}) {
        auto mg = negativity_margin(minimal_graph_form(n, 1));
        CHECK(mg.c0 > 0);
        CHECK(mg.c0 == doctest::Approx(2 * n - 2).epsilon(1e-3));
        CHECK(mg.lambda >= 1);
    }
    for (int n : {3, 4, 6}) CHECK(negativity_margin(ln_ball_form(n)).c0 > 0);
}
