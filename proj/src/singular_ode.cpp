#include "singular_ode.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

namespace phx {

NormalForm NormalForm::from_roots(int m_low, int m_high)
{
    if (m_low > 0 || m_high < 3)
        throw DomainError("indicial roots (" + std::to_string(m_low) + ", " + std::to_string(m_high) +
                          ") violate m_low <= 0, m_high >= 3");
    return NormalForm{1 - (m_low + m_high), m_low * m_high, m_low, m_high};
}

std::pair<int, int> indicial_roots(long p, long q)
{
    // m^2 - (1 - p) m + q = 0
    const long b = 1 - p;
    const long disc = b * b - 4 * q;
    if (disc < 0) throw DomainError("indicial roots are complex");
    long s = std::lround(std::sqrt(static_cast<double>(disc)));
    while (s * s > disc) --s;
    while ((s + 1) * (s + 1) <= disc) ++s;
    if (s * s != disc || (b + s) % 2 != 0) throw DomainError("indicial roots are not integers");
    const int lo = static_cast<int>((b - s) / 2), hi = static_cast<int>((b + s) / 2);
    NormalForm::from_roots(lo, hi);
    return {lo, hi};
}

ReductionChain reduce_order(const NormalForm& nf, int l)
{
    if (l < 0 || l > nf.m_high - 2)
        throw DomainError("reduction level " + std::to_string(l) + " outside [0, " + std::to_string(nf.m_high - 2) + "]");
    ReductionChain c;
    c.level = l;
    c.p_l = 2 * l + nf.p;
    c.q_l = l * l + (nf.p - 1) * l + nf.q;
    c.m_low_l = nf.m_low - l;
    c.m_high_l = nf.m_high - l;
    if (c.p_l != 1 + 2 * l - (nf.m_low + nf.m_high) || c.q_l != c.m_low_l * c.m_high_l)
        throw std::logic_error("reduce_order: closed forms disagree");
    return c;
}

FreeLogSeries::FreeLogSeries(const LogSeries& s) : dim_(s.dim()), order_(s.order()), c_(s.coeffs()) {}

TangentialPoly FreeLogSeries::coeff(int i, int j) const
{
    auto it = c_.find({i, j});
    return it == c_.end() ? TangentialPoly(dim_, order_ >= kExact ? kExact : order_ - i) : it->second;
}

void FreeLogSeries::add(int i, int j, const TangentialPoly& p)
{
    if (i > order_) return;
    TangentialPoly q = p;
    q.truncate(order_ >= kExact ? kExact : order_ - i);
    if (q.zero()) return;
    auto it = c_.find({i, j});
    if (it == c_.end()) {
        c_.emplace(Pow{i, j}, std::move(q));
        return;
    }
    it->second += q;
    if (it->second.zero()) c_.erase(it);
}

FreeLogSeries FreeLogSeries::ddt() const
{
    FreeLogSeries r(dim_, ord_add(order_, -1));
    for (const auto& [k, p] : c_) {
        if (k.first) r.add(k.first - 1, k.second, p * Q(k.first));
        if (k.second) r.add(k.first - 1, k.second - 1, p * Q(k.second));
    }
    return r;
}

FreeLogSeries FreeLogSeries::shift(int k) const
{
    FreeLogSeries r(dim_, ord_add(order_, k));
    for (const auto& [key, p] : c_) r.add(key.first + k, key.second, p);
    return r;
}

FreeLogSeries FreeLogSeries::chain_step() const
{
    FreeLogSeries r = ddt();
    for (const auto& [k, p] : shift(-1).c_) r.add(k.first, k.second, p * Q(-2));
    return r;
}

double FreeLogSeries::eval(double t, const std::vector<double>& x) const
{
    const double lt = std::log(t);
    double s = 0;
    for (const auto& [k, p] : c_) s += p.eval(x) * std::pow(t, k.first) * std::pow(lt, k.second);
    return s;
}

FreeLogSeries reduce_series(const LogSeries& u, int l)
{
    FreeLogSeries s(u);
    for (int k = 0; k < l; ++k) s = s.chain_step();
    return s;
}

LevelCoeffs first_nonlocal_symbolic(const NormalForm& nf, const LogSeries& u)
{
    if (u.order() < nf.m_high) throw DomainError("series too short for the first nonlocal coefficient");
    const FreeLogSeries ul = reduce_series(u, nf.m_high - 2);
    return {ul.coeff(2, 1), ul.coeff(2, 0)};
}

std::pair<TangentialPoly, TangentialPoly> nonlocal_from_level(const NormalForm& nf, const LevelCoeffs& lc)
{
    const int m = nf.m_high;
    auto push = [&](int j) {
        const auto e = reduce_series(LogSeries::monomial(0, kExact, m, j, Q(1)), m - 2);
        return std::pair<Q, Q>{e.coeff(2, 1).constant_term(), e.coeff(2, 0).constant_term()};
    };
    // columns: images of t^m and t^m log t in (c21, c20)
    const auto [a21, a20] = push(0);
    const auto [b21, b20] = push(1);
    const Q det = a21 * b20 - a20 * b21;
    if (det == 0) throw std::logic_error("nonlocal_from_level: singular push");
    // c21 = x a21 + y b21, c20 = x a20 + y b20
    TangentialPoly x = lc.c21 * Q(b20 / det) - lc.c20 * Q(b21 / det);
    TangentialPoly y = lc.c20 * Q(a21 / det) - lc.c21 * Q(a20 / det);
    return {x, y};
}

double geometric_quad(const std::function<double(double)>& f, double a, double b, double t_min)
{
    using boost::math::quadrature::gauss;
    if (b <= a) return a == b ? 0.0 : -geometric_quad(f, b, a, t_min);
    double sum = 0;
    if (a == 0) {
        // Halve down to t_min, then keep going while panels still matter.
        double hi = b;
        for (int k = 0; k < 400; ++k) {
            const double c = gauss<double, 20>::integrate(f, hi / 2, hi);
            sum += c;
            hi /= 2;
            if (!std::isfinite(sum)) break;
            if (hi <= t_min && std::abs(c) <= 1e-15 * std::max(1.0, std::abs(sum))) return sum;
        }
        throw DomainError("quadrature did not converge near 0: integrand not integrable");
    }
    for (double lo = a; lo < b; lo *= 2) sum += gauss<double, 20>::integrate(f, lo, std::min(2 * lo, b));
    return sum;
}

std::function<double(double)> ode_closed_form(const NormalForm& nf, std::function<double(double)> F, double u_at_r, double r)
{
    const double ml = nf.m_low, mh = nf.m_high, gap = nf.gap();
    auto low_w = [F, ml](double s) { return std::pow(s, 1 - ml) * F(s); };
    auto high_w = [F, mh](double s) { return std::pow(s, 1 - mh) * F(s); };
    const double Ir = geometric_quad(low_w, 0, r);
    const double A = u_at_r * std::pow(r, -mh) + std::pow(r, ml - mh) / gap * Ir;
    return [=](double t) {
        const double I0 = geometric_quad(low_w, 0, t);
        const double I1 = geometric_quad(high_w, t, r);
        return A * std::pow(t, mh) - std::pow(t, ml) * I0 / gap - std::pow(t, mh) * I1 / gap;
    };
}

NumericLevelCoeffs first_nonlocal_integral(const NormalForm& nf, const std::function<double(double)>& F_l, double F_l0,
                                           double u_l_at_r, double r)
{
    const double gap = nf.gap();
    const double I1 = geometric_quad([&](double s) { return std::pow(s, gap - 1) * F_l(s); }, 0, r);
    const double I2 = geometric_quad([&](double s) { return (F_l(s) - F_l0) / s; }, 0, r);
    NumericLevelCoeffs c;
    c.c21 = F_l0 / gap;
    c.c20 = u_l_at_r / (r * r) + std::pow(r, -gap) / gap * I1 - F_l0 / (gap * gap) - std::log(r) * F_l0 / gap - I2 / gap;
    return c;
}

namespace {

// k-th derivative by the O(h^2) central stencil.
double central_diff(const std::function<double(double)>& f, double t, int k, double h)
{
    if (k == 0) return f(t);
    double s = 0, binom = 1;
    for (int i = 0; i <= k; ++i) {
        s += ((i % 2) ? -binom : binom) * f(t + (0.5 * k - i) * h);
        binom = binom * (k - i) / (i + 1);
    }
    return s / std::pow(h, k);
}

// Richardson tableau over h = t/8, t/16, t/32.  A fourth level loses more to
// rounding than it gains once k >= 2.
double richardson_diff(const std::function<double(double)>& f, double t, int k)
{
    constexpr int levels = 3;
    double T[levels][levels];
    double h = t / 8;
    for (int i = 0; i < levels; ++i, h /= 2) {
        T[i][0] = central_diff(f, t, k, h);
        double p = 4;
        for (int j = 1; j <= i; ++j, p *= 4) T[i][j] = (p * T[i][j - 1] - T[i - 1][j - 1]) / (p - 1);
    }
    return T[levels - 1][levels - 1];
}

}  // namespace

NumericLevelCoeffs extract_first_nonlocal(const NormalForm& nf, const std::function<double(double)>& u, double t_lo,
                                          double t_hi, int samples, int max_power, int max_log)
{
    const int l = nf.m_high - 2;
    auto v0 = [&](double t) { return u(t) / (t * t); };

    // basis: log t, 1, t^a log^b t, and the singular images of t^m, m_low < m < 2
    std::vector<std::function<double(double)>> basis;
    basis.push_back([](double t) { return std::log(t); });
    basis.push_back([](double) { return 1.0; });
    for (int a = 1; a <= max_power; ++a)
        for (int b = 0; b <= max_log; ++b) basis.push_back([a, b](double t) { return std::pow(t, a) * std::pow(std::log(t), b); });
    for (int m = nf.m_low + 1; m < 2; ++m) basis.push_back([m, l](double t) { return std::pow(t, m - 2 - l); });

    Eigen::MatrixXd A(samples, basis.size());
    Eigen::VectorXd y(samples);
    for (int s = 0; s < samples; ++s) {
        const double t = t_lo * std::pow(t_hi / t_lo, double(s) / (samples - 1));
        // rows scaled by t^l: the differentiation error grows like t^-l
        const double w = std::pow(t, l);
        y(s) = w * richardson_diff(v0, t, l);
        if (!std::isfinite(y(s))) throw DomainError("samples not smooth enough for level differentiation");
        for (std::size_t b = 0; b < basis.size(); ++b) A(s, b) = w * basis[b](t);
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    NumericLevelCoeffs out;
    out.c21 = c(0);
    out.c20 = c(1);
    out.fit_residual = (A * c - y).norm() / std::sqrt(double(samples));
    return out;
}

LogSeries reconstruct_from_levels(const std::vector<TangentialPoly>& v_at_zero, const LogSeries& v_l)
{
    const int l = static_cast<int>(v_at_zero.size());
    LogSeries g = v_l;
    for (int k = 0; k < l; ++k) g = weighted_antideriv(g, 1).shift(-1);
    LogSeries u = g.shift(2);
    Q fact = 1;
    for (int i = 0; i < l; ++i) {
        if (i > 0) fact *= i;
        LogSeries term(v_l.dim(), kExact);
        term.add(i + 2, 0, v_at_zero[i] * Q(1 / fact));
        u += term;
    }
    return u;
}

}  // namespace phx
