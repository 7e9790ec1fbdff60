#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "tangential_poly.hpp"

namespace phx {

// Order of a series that is known exactly (a finite expression, nothing cut).
constexpr int kExact = 1 << 24;

inline int ord_add(int a, int b)
{
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
}

// Key (i, j) of the monomial t^i (log t)^j.
using Pow = std::pair<int, int>;

// Sum over (i, j) of c_ij(x') t^i (log t)^j.
//
// Truncation is by joint weight: a coefficient c_ij has tangential degree at
// most order() - i, so the term x'^a t^i (log t)^j is kept iff i + |a| <= order().
// Every stored term is exact.  With dim == 0 this is plain truncation in t.
template <class T>
class LogSeriesT {
public:
    using Poly = TangentialPolyT<T>;
    using Map = std::map<Pow, Poly>;

    LogSeriesT() = default;
    LogSeriesT(int dim, int order) : dim_(dim), order_(order) {}

    static LogSeriesT monomial(int dim, int order, int i, int j, const T& c)
    {
        LogSeriesT s(dim, order);
        s.add(i, j, Poly::constant(dim, s.cap(i), c));
        return s;
    }
    static LogSeriesT constant(int dim, const Poly& p)
    {
        LogSeriesT s(dim, p.max_degree() >= kExact / 2 ? kExact : p.max_degree());
        s.add(0, 0, p);
        return s;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    const Map& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }
    int cap(int i) const { return order_ >= kExact ? kExact : order_ - i; }

    Poly coeff(int i, int j) const
    {
        auto it = c_.find({i, j});
        return it == c_.end() ? Poly(dim_, cap(i)) : it->second;
    }

    void add(int i, int j, Poly p)
    {
        if (p.dim() != dim_) throw DomainError("tangential dimension mismatch");
        if (j < 0) throw DomainError("negative log power");
        if (i > order_) return;
        p.truncate(cap(i));
        if (p.zero()) return;
        if (i == 0 && j > 0) throw DomainError("bare log term (i = 0, j > 0) is not allowed");
        auto it = c_.find({i, j});
        if (it == c_.end()) {
            c_.emplace(Pow{i, j}, std::move(p));
            return;
        }
        it->second += p;
        if (it->second.zero()) c_.erase(it);
    }

    // Lowest weight i + |a| among stored terms, or kExact when empty.
    int valuation() const
    {
        int v = kExact;
        for (const auto& [k, p] : c_) v = std::min(v, k.first + p.min_degree());
        return v;
    }
    // Valuation of the true (untruncated) series: at least order + 1.
    int valuation_bound() const { return std::min(valuation(), ord_add(order_, 1)); }

    int min_power() const { return c_.empty() ? kExact : c_.begin()->first.first; }
    int max_power() const { return c_.empty() ? -kExact : c_.rbegin()->first.first; }
    int max_log() const
    {
        int m = 0;
        for (const auto& kv : c_) m = std::max(m, kv.first.second);
        return m;
    }

    void truncate(int order)
    {
        if (order >= order_) return;
        order_ = order;
        Map out;
        for (auto& [k, p] : c_) {
            if (k.first > order_) continue;
            p.truncate(cap(k.first));
            if (!p.zero()) out.emplace(k, std::move(p));
        }
        c_ = std::move(out);
    }

    LogSeriesT& operator+=(const LogSeriesT& o)
    {
        same_dim(o);
        truncate(o.order_);
        for (const auto& [k, p] : o.c_) add(k.first, k.second, p);
        return *this;
    }
    LogSeriesT& operator-=(const LogSeriesT& o)
    {
        same_dim(o);
        truncate(o.order_);
        for (const auto& [k, p] : o.c_) add(k.first, k.second, -p);
        return *this;
    }
    LogSeriesT& operator*=(const T& s)
    {
        if (is_zero(s)) { c_.clear(); return *this; }
        for (auto& kv : c_) kv.second *= s;
        return *this;
    }
    friend LogSeriesT operator+(LogSeriesT a, const LogSeriesT& b) { return a += b; }
    friend LogSeriesT operator-(LogSeriesT a, const LogSeriesT& b) { return a -= b; }
    friend LogSeriesT operator*(LogSeriesT a, const T& s) { return a *= s; }
    LogSeriesT operator-() const { return *this * T(-1); }

    // Multiply by t^k (k may be negative).
    LogSeriesT shift(int k) const
    {
        LogSeriesT r(dim_, ord_add(order_, k));
        for (const auto& [key, p] : c_) {
            Poly q = p;
            q.truncate(r.cap(key.first + k));
            r.c_.emplace(Pow{key.first + k, key.second}, std::move(q));
            if (key.first + k == 0 && key.second > 0)
                throw DomainError("bare log term (i = 0, j > 0) is not allowed");
        }
        return r;
    }

    // d/dx'_k.
    LogSeriesT dx(int k) const
    {
        LogSeriesT r(dim_, ord_add(order_, -1));
        for (const auto& [key, p] : c_) r.add(key.first, key.second, p.derivative(k));
        return r;
    }

    double eval(double t, const std::vector<double>& x = {}) const
    {
        const double lt = std::log(t);
        double s = 0.0;
        for (const auto& [key, p] : c_) s += p.eval(x) * std::pow(t, key.first) * std::pow(lt, key.second);
        return s;
    }

    bool same_terms(const LogSeriesT& o) const { return dim_ == o.dim_ && c_ == o.c_; }
    bool operator==(const LogSeriesT& o) const { return same_terms(o) && order_ == o.order_; }
    bool operator!=(const LogSeriesT& o) const { return !(*this == o); }

    void same_dim(const LogSeriesT& o) const
    {
        if (dim_ != o.dim_) throw DomainError("tangential dimension mismatch");
    }

private:
    int dim_ = 0;
    int order_ = kExact;
    Map c_;
};

using LogSeries = LogSeriesT<Q>;

LogSeriesT<double> to_float(const LogSeries& s);

// Product truncated to the weight at which it is still exact.
template <class T>
LogSeriesT<T> series_mul(const LogSeriesT<T>& a, const LogSeriesT<T>& b);

// d/dt; rejects bare log terms.
template <class T>
LogSeriesT<T> series_ddt(const LogSeriesT<T>& a);

// t^mu * int_0^t rho^(1-mu) a(rho) drho, term by term in closed form.
// A term t^(mu-2) (log t)^j is resonant and yields t^mu (log t)^(j+1)/(j+1).
template <class T>
LogSeriesT<T> weighted_antideriv(const LogSeriesT<T>& a, int mu);

// L f = f'' + p f'/t + q f/t^2 applied symbolically.
template <class T>
LogSeriesT<T> apply_euler_operator(const LogSeriesT<T>& f, int p, int q);

// Taylor data of an analytic function of several variables, given by its
// coefficients up to total degree `degree`.  `polynomial` means the data is
// the whole function.
struct TaylorData {
    int nvars = 1;
    int degree = 0;
    bool polynomial = false;
    double radius = 1.0;
    std::map<std::vector<int>, Q> coeffs;

    static TaylorData geometric(int degree, const Q& ratio = 1);  // 1/(1 - ratio*y)
    static TaylorData binomial(const Q& gamma, int degree);       // (1+y)^gamma
};

LogSeries compose_analytic(const TaylorData& f, const std::vector<LogSeries>& args);

// T = t, S = t log t as independent variables.
class TwoVarSeries {
public:
    TwoVarSeries() = default;
    TwoVarSeries(int dim, int order) : dim_(dim), order_(order) {}
    int dim() const { return dim_; }
    int order() const { return order_; }
    const std::map<Pow, TangentialPoly>& coeffs() const { return c_; }
    void add(int a, int b, const TangentialPoly& p);
    bool operator==(const TwoVarSeries& o) const { return dim_ == o.dim_ && c_ == o.c_; }

private:
    int dim_ = 0;
    int order_ = kExact;
    std::map<Pow, TangentialPoly> c_;  // (T-power, S-power)
};

TwoVarSeries two_var_lift(const LogSeries& a);
TwoVarSeries lambda_apply(const TwoVarSeries& b);
LogSeries collapse(const TwoVarSeries& b);

}  // namespace phx
