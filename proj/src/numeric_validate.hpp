#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "log_series.hpp"
#include "singular_ode.hpp"

namespace phx {

using Real = boost::multiprecision::cpp_bin_float_50;

Real to_real(const Q& q);

// Radial ODE written with y = t v' and z = t^2 v''; eval returns
// {G, dG/dv, dG/dy, dG/dz} at (t, v, y, z).
struct RadialODE {
    std::string name;
    std::function<std::array<double, 4>(double t, double v, double y, double z)> eval;
};

// v = (1-t/2)^{-(n-2)/2} - 1 solves this.
RadialODE ln_ball_ode(int n);
// U(t) = u(0, t) for the hemisphere over the ball of radius R; the
// tangential Laplacian at x' = 0 is -(n-1)/sqrt(R^2 - t^2).
RadialODE hemisphere_slice_ode(int n, double R);
// v'' + p v'/t + q v/t^2 = 0
RadialODE linear_ode(const NormalForm& nf);

struct GridSpec {
    double t_min = 1e-4;
    double r = 0.5;
    int points = 2000;
    double tol = 1e-10;
    int max_newton = 60;
    int max_halvings = 30;
};

struct NewtonStep {
    int iter = 0;
    double residual = 0;
    int halvings = 0;
};

struct GridSolution {
    std::vector<double> t, v;
    double residual = 0;
    std::vector<NewtonStep> log;
};

// Second-order differences on a grid uniform in log t, Dirichlet data at both
// ends, damped Newton from `guess` (linear in log t if empty).
GridSolution fd_solve_radial(const RadialODE& ode, double v_inner, double v_outer, const GridSpec& spec,
                             const std::function<double(double)>& guess = {});

// Solves on `spec` and on the grid with half the log-step, then combines
// (4 v_fine - v_coarse)/3 at the coarse nodes.
GridSolution fd_solve_richardson(const RadialODE& ode, double v_inner, double v_outer, const GridSpec& spec,
                                 const std::function<double(double)>& guess = {});

double max_error(const GridSolution& g, const std::function<double(double)>& exact);

struct SlopeRow {
    int k = 0;
    double slope = 0;
    int expected = 0;  // first nonzero t-power above k in the reference series
    bool saturated = false;
    bool ok = false;
};

struct Sample {
    Real t, u;
};

// Least-squares slope of log|u - S_k| against log t on [10 t_min, 1000 t_min],
// S_k the partial sum through t^k of `series` (tangential variables at 0).
// Remainders at or below `noise` (or not monotone) mark the row saturated.
std::vector<SlopeRow> remainder_slopes(const std::vector<Sample>& samples, const LogSeries& series,
                                       const std::vector<int>& ks, double t_min, double noise);

std::vector<Sample> sample_function(const std::function<Real(const Real&)>& u, double t_min, int count = 40);
std::vector<Sample> sample_grid(const GridSolution& g);

std::string slopes_csv(const std::vector<SlopeRow>& rows);
std::string grid_csv(const GridSolution& g, const std::function<double(double)>& exact);

struct GrowthFit {
    std::vector<double> norms;  // sup over unit directions of the degree-l part
    double B = 0;
    double radius = 0;  // 1/B, infinite when degenerate
    double fit_residual = 0;
    bool degenerate = false;
};

GrowthFit tangential_growth_fit(const TangentialPoly& c);
// Fit on c_2 of the series; needs tangential degree >= 6 there.
GrowthFit tangential_growth_fit(const LogSeries& series);

// 2 A_nn + 2P + Q sampled along a solution ray.
struct QuasilinearSample {
    double A_nn = 0, P = 0, Q = 0;
    double lambda = 1;  // ellipticity ratio at the sample
};

struct QuasilinearForm {
    std::string name;
    // coefficients at t on the ray x' = 0 of the known solution
    std::function<QuasilinearSample(double t)> along_solution;
};

QuasilinearForm minimal_graph_form(int n, double R);
QuasilinearForm ln_ball_form(int n);

struct MarginReport {
    double max_value = 0;  // sup of 2A_nn + 2P + Q
    double c0 = 0;         // -max_value
    double lambda = 1;
};

MarginReport negativity_margin(const QuasilinearForm& form, double t_lo = 1e-4, double t_hi = 0.1, int samples = 200);

}  // namespace phx
