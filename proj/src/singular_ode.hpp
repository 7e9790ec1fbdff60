#pragma once

#include <functional>
#include <utility>

#include "log_series.hpp"

namespace phx {

// u'' + p u'/t + q u/t^2 with integer indicial roots m_low <= 0, m_high >= 3.
struct NormalForm {
    int p = 0, q = 0;
    int m_low = 0, m_high = 3;

    static NormalForm from_roots(int m_low, int m_high);
    int gap() const { return m_high - m_low; }
};

std::pair<int, int> indicial_roots(long p, long q);

struct ReductionChain {
    int level = 0;
    int p_l = 0, q_l = 0;
    int m_low_l = 0, m_high_l = 0;
};

ReductionChain reduce_order(const NormalForm& nf, int l);

// Sum of c_ij t^i (log t)^j with no restriction on (i, j): the reduction chain
// differentiates t^k log t down to log t, which LogSeries refuses to hold.
class FreeLogSeries {
public:
    FreeLogSeries() = default;
    FreeLogSeries(int dim, int order) : dim_(dim), order_(order) {}
    explicit FreeLogSeries(const LogSeries& s);

    int dim() const { return dim_; }
    int order() const { return order_; }
    const std::map<Pow, TangentialPoly>& coeffs() const { return c_; }
    TangentialPoly coeff(int i, int j) const;
    void add(int i, int j, const TangentialPoly& p);

    FreeLogSeries ddt() const;
    FreeLogSeries shift(int k) const;
    // u' - 2u/t
    FreeLogSeries chain_step() const;
    double eval(double t, const std::vector<double>& x = {}) const;

private:
    int dim_ = 0;
    int order_ = kExact;
    std::map<Pow, TangentialPoly> c_;
};

// u_l of the chain applied to a series u.
FreeLogSeries reduce_series(const LogSeries& u, int l);

struct LevelCoeffs {
    TangentialPoly c21, c20;  // t^2 log t and t^2 in u_{m_high - 2}
};

LevelCoeffs first_nonlocal_symbolic(const NormalForm& nf, const LogSeries& u);

// (c_{m_high,0}, c_{m_high,1}) from level data, by pushing t^m and t^m log t
// through the chain and inverting the resulting 2x2 triangular map.
std::pair<TangentialPoly, TangentialPoly> nonlocal_from_level(const NormalForm& nf, const LevelCoeffs& lc);

struct NumericLevelCoeffs {
    double c21 = 0, c20 = 0;
    double fit_residual = 0;
};

// Numeric path: v_l = d^l(u/t^2), l = m_high - 2, by Richardson-extrapolated
// central differences (h = t/8), then a least-squares fit on [t_lo, t_hi]
// against log t, 1, t^a (log t)^b (a <= max_power, b <= max_log) and the
// images of the admissible powers below t^2.
NumericLevelCoeffs extract_first_nonlocal(const NormalForm& nf, const std::function<double(double)>& u, double t_lo = 0.02,
                                          double t_hi = 0.4, int samples = 40, int max_power = 2, int max_log = 1);

// Integral expression for (c21, c20) given F_l = d^l F along the solution and
// its boundary value F_l(0).
NumericLevelCoeffs first_nonlocal_integral(const NormalForm& nf, const std::function<double(double)>& F_l, double F_l0,
                                           double u_l_at_r, double r = 0.5);

// Solution of L0 u = F with t^{-m_low} u -> 0 and prescribed u(r).
std::function<double(double)> ode_closed_form(const NormalForm& nf, std::function<double(double)> F, double u_at_r,
                                              double r = 0.5);

// u = sum_{i<l} v_i(0) t^{i+2}/i! + t^2 * (l-fold integral of v_l from 0).
LogSeries reconstruct_from_levels(const std::vector<TangentialPoly>& v_at_zero, const LogSeries& v_l);

// int_a^b f over geometric panels (ratio 1/2): toward 0 when a == 0, else
// doubling from a.
double geometric_quad(const std::function<double(double)>& f, double a, double b, double t_min = 1e-8);

}  // namespace phx
