#include "log_series.hpp"

#include <cstdlib>

namespace phx {

LogSeriesT<double> to_float(const LogSeries& s)
{
    LogSeriesT<double> r(s.dim(), s.order());
    for (const auto& [k, p] : s.coeffs()) r.add(k.first, k.second, to_float(p));
    return r;
}

template <class T>
LogSeriesT<T> series_mul(const LogSeriesT<T>& a, const LogSeriesT<T>& b)
{
    using Poly = TangentialPolyT<T>;
    a.same_dim(b);
    const int W = std::min(ord_add(a.order(), b.valuation_bound()), ord_add(b.order(), a.valuation_bound()));
    LogSeriesT<T> r(a.dim(), W);
    std::map<Pow, Poly> acc;
    for (const auto& [ka, pa] : a.coeffs()) {
        for (const auto& [kb, pb] : b.coeffs()) {
            const int i = ka.first + kb.first;
            if (i > W) break;
            const int cap = r.cap(i);
            if (pa.min_degree() + pb.min_degree() > cap) continue;
            auto it = acc.try_emplace(Pow{i, ka.second + kb.second}, Poly(a.dim(), cap)).first;
            Poly::mul_add(it->second, pa, pb);
        }
    }
    for (auto& [k, p] : acc)
        if (!p.zero()) r.add(k.first, k.second, std::move(p));
    return r;
}

template <class T>
LogSeriesT<T> series_ddt(const LogSeriesT<T>& a)
{
    LogSeriesT<T> r(a.dim(), ord_add(a.order(), -1));
    for (const auto& [k, p] : a.coeffs()) {
        const auto [i, j] = k;
        if (i != 0) r.add(i - 1, j, p * T(i));
        if (j != 0) r.add(i - 1, j - 1, p * T(j));
    }
    return r;
}

template <class T>
LogSeriesT<T> weighted_antideriv(const LogSeriesT<T>& a, int mu)
{
    LogSeriesT<T> r(a.dim(), ord_add(a.order(), 2));
    for (const auto& [k, p] : a.coeffs()) {
        const auto [m, j] = k;
        const int e = m + 1 - mu;
        if (e < -1)
            throw DomainError("weighted antiderivative: t^" + std::to_string(m) + " is not integrable against rho^" +
                              std::to_string(1 - mu));
        if (e == -1) {
            r.add(mu, j + 1, p * (T(1) / T(j + 1)));
            continue;
        }
        // int_0^t rho^e log^j = t^(e+1) sum_k (-1)^k j!/(j-k)! log^(j-k) t / (e+1)^(k+1)
        T fall = 1;
        T pw = T(1) / T(e + 1);
        for (int kk = 0; kk <= j; ++kk) {
            T c = fall * pw;
            if (kk % 2) c = -c;
            r.add(m + 2, j - kk, p * c);
            fall *= T(j - kk);
            pw /= T(e + 1);
        }
    }
    return r;
}

template <class T>
LogSeriesT<T> apply_euler_operator(const LogSeriesT<T>& f, int p, int q)
{
    LogSeriesT<T> r(f.dim(), ord_add(f.order(), -2));
    for (const auto& [k, c] : f.coeffs()) {
        const auto [m, j] = k;
        const long a0 = long(m) * (m - 1) + long(p) * m + q;
        const long a1 = long(j) * (2 * m - 1 + p);
        const long a2 = long(j) * (j - 1);
        if (a0) r.add(m - 2, j, c * T(a0));
        if (a1) r.add(m - 2, j - 1, c * T(a1));
        if (a2) r.add(m - 2, j - 2, c * T(a2));
    }
    return r;
}

template LogSeriesT<Q> series_mul(const LogSeriesT<Q>&, const LogSeriesT<Q>&);
template LogSeriesT<double> series_mul(const LogSeriesT<double>&, const LogSeriesT<double>&);
template LogSeriesT<Q> series_ddt(const LogSeriesT<Q>&);
template LogSeriesT<double> series_ddt(const LogSeriesT<double>&);
template LogSeriesT<Q> weighted_antideriv(const LogSeriesT<Q>&, int);
template LogSeriesT<double> weighted_antideriv(const LogSeriesT<double>&, int);
template LogSeriesT<Q> apply_euler_operator(const LogSeriesT<Q>&, int, int);
template LogSeriesT<double> apply_euler_operator(const LogSeriesT<double>&, int, int);

TaylorData TaylorData::geometric(int degree, const Q& ratio)
{
    TaylorData f;
    f.nvars = 1;
    f.degree = degree;
    f.radius = ratio == 0 ? 1e300 : 1.0 / std::abs(ratio.get_d());
    Q c = 1;
    for (int m = 0; m <= degree; ++m) {
        f.coeffs[{m}] = c;
        c *= ratio;
    }
    return f;
}

TaylorData TaylorData::binomial(const Q& gamma, int degree)
{
    TaylorData f;
    f.nvars = 1;
    f.degree = degree;
    f.radius = 1.0;
    Q c = 1;
    for (int m = 0; m <= degree; ++m) {
        if (c != 0) f.coeffs[{m}] = c;
        c *= (gamma - m);
        c /= (m + 1);
    }
    // Nonnegative integer exponent: the expansion terminates.
    f.polynomial = gamma.get_den() == 1 && gamma >= 0 && gamma <= degree;
    return f;
}

LogSeries compose_analytic(const TaylorData& f, const std::vector<LogSeries>& args)
{
    if (static_cast<int>(args.size()) != f.nvars) throw DomainError("compose_analytic: argument count mismatch");
    if (args.empty()) throw DomainError("compose_analytic: no arguments");
    const int dim = args[0].dim();
    int order = kExact;
    int nu = kExact;
    for (const auto& a : args) {
        a.same_dim(args[0]);
        order = std::min(order, a.order());
        nu = std::min(nu, a.valuation_bound());
        const Q c0 = a.coeff(0, 0).constant_term();
        if (!f.polynomial && c0 != 0) {
            if (std::abs(c0.get_d()) >= f.radius) throw DomainError("compose_analytic: divergent substitution");
            throw DomainError("compose_analytic: nonzero constant term needs re-expansion beyond the Taylor data");
        }
    }
    // Neglected Taylor terms have weight at least (degree + 1) * nu.
    int target = kExact;
    if (!f.polynomial) {
        if (nu <= 0) throw DomainError("compose_analytic: argument without positive valuation");
        target = (f.degree + 1) * nu - 1;
        if (order >= kExact && target >= kExact) target = kExact;
    }

    // powers[k][m] = args[k]^m, truncated at target
    std::vector<std::vector<LogSeries>> powers(args.size());
    auto power = [&](std::size_t k, int m) -> const LogSeries& {
        auto& pk = powers[k];
        if (pk.empty()) {
            LogSeries one(dim, kExact);
            one.add(0, 0, TangentialPoly::constant(dim, kExact, 1));
            pk.push_back(one);
        }
        while (static_cast<int>(pk.size()) <= m) {
            LogSeries next = series_mul(pk.back(), args[k]);
            next.truncate(target);
            pk.push_back(std::move(next));
        }
        return pk[m];
    };

    LogSeries result(dim, target);
    bool first = true;
    for (const auto& [e, c] : f.coeffs) {
        if (static_cast<int>(e.size()) != f.nvars) throw DomainError("compose_analytic: bad Taylor multi-index");
        LogSeries term(dim, kExact);
        term.add(0, 0, TangentialPoly::constant(dim, kExact, c));
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] > 0) term = series_mul(term, power(k, e[k]));
        if (first) {
            result = LogSeries(dim, std::min(target, term.order()));
            first = false;
        }
        result += term;
    }
    result.truncate(target);
    return result;
}

void TwoVarSeries::add(int a, int b, const TangentialPoly& p)
{
    if (a + b > order_) return;
    TangentialPoly q = p;
    q.truncate(order_ >= kExact ? kExact : order_ - a - b);
    if (q.zero()) return;
    auto it = c_.find({a, b});
    if (it == c_.end()) {
        c_.emplace(Pow{a, b}, std::move(q));
        return;
    }
    it->second += q;
    if (it->second.zero()) c_.erase(it);
}

TwoVarSeries two_var_lift(const LogSeries& s)
{
    TwoVarSeries r(s.dim(), s.order());
    for (const auto& [k, p] : s.coeffs()) {
        if (k.second > k.first)
            throw DomainError("two_var_lift: log power exceeds t power, not polyhomogeneous");
        r.add(k.first - k.second, k.second, p);
    }
    return r;
}

TwoVarSeries lambda_apply(const TwoVarSeries& s)
{
    TwoVarSeries r(s.dim(), s.order());
    for (const auto& [k, p] : s.coeffs()) {
        const auto [a, b] = k;
        if (a) r.add(a, b, p * Q(a));
        if (b) {
            r.add(a + 1, b - 1, p * Q(b));
            r.add(a, b, p * Q(b));
        }
    }
    return r;
}

LogSeries collapse(const TwoVarSeries& s)
{
    LogSeries r(s.dim(), s.order());
    for (const auto& [k, p] : s.coeffs()) r.add(k.first + k.second, k.second, p);
    return r;
}

}  // namespace phx
