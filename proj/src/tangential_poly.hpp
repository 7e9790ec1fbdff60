#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace phx {

using Q = mpq_class;

// a/b in lowest terms (the two-argument mpq constructor does not reduce).
inline Q frac(long a, long b)
{
    Q r(a, b);
    r.canonicalize();
    return r;
}

// Packed multi-index: bytes 0..6 hold exponents, byte 7 the total degree, so
// adding two keys multiplies the monomials and the map order is graded.
using Mono = std::uint64_t;

constexpr int kMaxDim = 7;

inline int mono_deg(Mono m) { return static_cast<int>(m >> 56); }
inline int mono_exp(Mono m, int k) { return static_cast<int>((m >> (8 * k)) & 0xffu); }

inline Mono make_mono(const std::vector<int>& e)
{
    if (e.size() > static_cast<std::size_t>(kMaxDim))
        throw DomainError("too many tangential variables");
    Mono m = 0;
    int d = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] < 0 || e[k] > 200) throw DomainError("tangential exponent out of range");
        m |= static_cast<Mono>(e[k]) << (8 * k);
        d += e[k];
    }
    if (d > 200) throw DomainError("tangential degree out of range");
    return m | (static_cast<Mono>(d) << 56);
}

inline std::vector<int> mono_exps(Mono m, int dim)
{
    std::vector<int> e(dim);
    for (int k = 0; k < dim; ++k) e[k] = mono_exp(m, k);
    return e;
}

template <class T>
inline bool is_zero(const T& x) { return x == 0; }

inline double to_double(const Q& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

// Truncated polynomial in the tangential variables x'.  T is Q (exact) or
// double; the two never meet in one expression.
template <class T>
class TangentialPolyT {
public:
    using Terms = std::map<Mono, T>;

    TangentialPolyT() = default;
    TangentialPolyT(int dim, int max_degree) : dim_(dim), maxdeg_(max_degree)
    {
        if (dim < 0 || dim > kMaxDim) throw DomainError("bad tangential dimension");
    }

    static TangentialPolyT constant(int dim, int max_degree, const T& c)
    {
        TangentialPolyT p(dim, max_degree);
        p.add_term(0, c);
        return p;
    }

    int dim() const { return dim_; }
    int max_degree() const { return maxdeg_; }
    const Terms& terms() const { return terms_; }
    bool zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    T coeff(Mono m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? T(0) : it->second;
    }
    T constant_term() const { return coeff(0); }

    int min_degree() const { return terms_.empty() ? 1 << 20 : mono_deg(terms_.begin()->first); }

    void add_term(Mono m, const T& c)
    {
        if (mono_deg(m) > maxdeg_ || is_zero(c)) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    // Lower the cap, dropping terms above it.
    void truncate(int max_degree)
    {
        if (max_degree >= maxdeg_) return;
        maxdeg_ = max_degree;
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (mono_deg(it->first) > maxdeg_) it = terms_.erase(it);
            else ++it;
        }
    }

    TangentialPolyT& operator+=(const TangentialPolyT& o)
    {
        check(o);
        truncate(o.maxdeg_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TangentialPolyT& operator-=(const TangentialPolyT& o)
    {
        check(o);
        truncate(o.maxdeg_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    TangentialPolyT& operator*=(const T& s)
    {
        if (is_zero(s)) { terms_.clear(); return *this; }
        for (auto& kv : terms_) kv.second *= s;
        return *this;
    }
    friend TangentialPolyT operator+(TangentialPolyT a, const TangentialPolyT& b) { return a += b; }
    friend TangentialPolyT operator-(TangentialPolyT a, const TangentialPolyT& b) { return a -= b; }
    friend TangentialPolyT operator*(TangentialPolyT a, const T& s) { return a *= s; }
    TangentialPolyT operator-() const { return *this * T(-1); }

    // dst += a*b restricted to degree <= dst.max_degree().
    static void mul_add(TangentialPolyT& dst, const TangentialPolyT& a, const TangentialPolyT& b)
    {
        a.check(b);
        const int cap = dst.maxdeg_;
        T prod;
        for (const auto& [ma, ca] : a.terms_) {
            const int da = mono_deg(ma);
            if (da + b.min_degree() > cap) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (da + mono_deg(mb) > cap) break;
                prod = ca * cb;
                dst.add_term(ma + mb, prod);
            }
        }
    }

    friend TangentialPolyT operator*(const TangentialPolyT& a, const TangentialPolyT& b)
    {
        TangentialPolyT r(a.dim_, std::min(a.maxdeg_, b.maxdeg_));
        mul_add(r, a, b);
        return r;
    }

    // d/dx_k; the cap drops by one since degree-cap terms lose their partner.
    TangentialPolyT derivative(int k) const
    {
        if (k < 0 || k >= dim_) throw DomainError("derivative index out of range");
        TangentialPolyT r(dim_, maxdeg_ - 1);
        const Mono step = (Mono(1) << (8 * k)) | (Mono(1) << 56);
        for (const auto& [m, c] : terms_) {
            const int e = mono_exp(m, k);
            if (e == 0) continue;
            r.add_term(m - step, c * T(e));
        }
        return r;
    }

    double eval(const std::vector<double>& x) const
    {
        double s = 0.0;
        for (const auto& [m, c] : terms_) {
            double v = to_double(c);
            for (int k = 0; k < dim_; ++k)
                for (int e = mono_exp(m, k); e > 0; --e) v *= x[k];
            s += v;
        }
        return s;
    }

    // Sum |c_a| s^|a|: bounds the sup of the polynomial on the polydisc of radius s.
    double majorant(double s) const
    {
        double acc = 0.0;
        for (const auto& [m, c] : terms_) {
            double v = std::abs(to_double(c));
            for (int e = mono_deg(m); e > 0; --e) v *= s;
            acc += v;
        }
        return acc;
    }

    bool operator==(const TangentialPolyT& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const TangentialPolyT& o) const { return !(*this == o); }

private:
    void check(const TangentialPolyT& o) const
    {
        if (dim_ != o.dim_) throw DomainError("tangential dimension mismatch");
    }

    int dim_ = 0;
    int maxdeg_ = 0;
    Terms terms_;
};

using TangentialPoly = TangentialPolyT<Q>;

inline TangentialPolyT<double> to_float(const TangentialPoly& p)
{
    TangentialPolyT<double> r(p.dim(), p.max_degree());
    for (const auto& [m, c] : p.terms()) r.add_term(m, c.get_d());
    return r;
}

}  // namespace phx
