#include "friedman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace phx {

Q factorial(int m)
{
    Q r = 1;
    for (int k = 2; k <= m; ++k) r *= k;
    return r;
}

namespace {

double factorial_d(int m) { return factorial(m).get_d(); }

void require_positive(const Q& x, const char* name)
{
    if (x <= 0) throw DomainError(std::string(name) + " must be positive");
}

Q qpow(const Q& x, int e)
{
    Q r = 1;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

}  // namespace

FriedmanConstants friedman_constants(const Q& A0, const Q& A1, const Q& A2, const Q& B0)
{
    require_positive(A0, "A0");
    require_positive(A1, "A1");
    require_positive(A2, "A2");
    require_positive(B0, "B0");
    FriedmanConstants c;
    c.B1 = std::max({Q(16), Q(6 * A2 * B0), Q(2 * A1)});
    c.B0_tilde = A0 * B0 * (9 * A2 + A2 * A2 * B0) * (A1 * A1 + 3 * A1 + 16);
    return c;
}

std::vector<Q> psi1_coeffs(const Q& A1, int p)
{
    std::vector<Q> c(p + 1);
    for (int i = 0; i <= p; ++i) c[i] = qpow(A1, i) * factorial(i - 2) / factorial(i);
    return c;
}

std::vector<Q> psi2_coeffs(const Q& A0, const Q& A2, int p)
{
    std::vector<Q> c(p + 1);
    for (int i = 0; i <= p; ++i) c[i] = A0 * qpow(A2, i) * factorial(i - 2) / factorial(i);
    return c;
}

std::vector<Q> z_coeffs(const Q& B0, const Q& B1, int p)
{
    std::vector<Q> c(p + 1);
    if (p >= 1) c[1] = B0;
    for (int k = 2; k <= p; ++k) c[k] = B0 * qpow(B1, k - 2) / (k * (k - 1));
    return c;
}

std::vector<Q> truncated_mul(const std::vector<Q>& a, const std::vector<Q>& b, int p)
{
    std::vector<Q> r(p + 1);
    for (std::size_t i = 0; i < a.size() && int(i) <= p; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && int(i + j) <= p; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

std::vector<std::vector<Q>> z_power_coeffs(int p, const Q& B0, const Q& B1)
{
    if (p < 1) throw DomainError("p must be at least 1");
    require_positive(B0, "B0");
    require_positive(B1, "B1");
    const std::vector<Q> z = z_coeffs(B0, B1, p);
    std::vector<std::vector<Q>> a(p + 1, std::vector<Q>(p + 1));
    std::vector<Q> zi = z;
    for (int i = 1; i <= p; ++i) {
        if (i > 1) zi = truncated_mul(zi, z, p);
        const Q lead = qpow(B0, i);
        a[i][i] = zi[i] / lead;
        for (int k = i + 1; k <= p; ++k) a[i][k] = zi[k] / (lead * qpow(B1, k - i - 1));
    }
    return a;
}

CoefficientBoundReport verify_coefficient_bound(int p, const Q& B1)
{
    const auto a = z_power_coeffs(p, 1, B1);
    CoefficientBoundReport r;
    r.worst_ratio = 0;
    for (int i = 1; i <= p; ++i)
        for (int k = i + 1; k <= p; ++k) {
            const Q bound = qpow(Q(3), i - 1) / Q((k - i + 1) * (k - i));
            const Q ratio = a[i][k] / bound;
            if (ratio > r.worst_ratio) {
                r.worst_ratio = ratio;
                r.worst_i = i;
                r.worst_k = k;
            }
            if (a[i][k] > bound || a[i][k] < 0) r.holds = false;
        }
    return r;
}

namespace {

std::vector<double> mul_d(const std::vector<double>& a, const std::vector<double>& b, int p)
{
    std::vector<double> r(p + 1, 0.0);
    for (int i = 0; i <= p && i < int(a.size()); ++i)
        for (int j = 0; i + j <= p && j < int(b.size()); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// (1-x) log(1-x) + x, whose j-th derivative is (j-2)!/(1-x)^{j-1} for j >= 2
std::vector<double> saturating(double x, int p)
{
    std::vector<double> c(p + 1, 0.0);
    c[0] = 1 + (1 - x) * std::log(1 - x) + x;
    if (p >= 1) c[1] = -std::log(1 - x);
    for (int j = 2; j <= p; ++j) c[j] = factorial_d(j - 2) / std::pow(1 - x, j - 1) / factorial_d(j);
    return c;
}

std::vector<double> constant_one(double, int p)
{
    std::vector<double> c(p + 1, 0.0);
    c[0] = 1;
    return c;
}

std::vector<double> half_x(double x, int p)
{
    std::vector<double> c(p + 1, 0.0);
    c[0] = x / 2;
    if (p >= 1) c[1] = 0.5;
    return c;
}

}  // namespace

std::vector<CompositionFamily> composition_families()
{
    std::vector<CompositionFamily> out;

    CompositionFamily id;
    id.name = "identity_of_rational";  // Phi = y, y = x/(2(1-x))
    id.A0 = id.A1 = id.A2 = id.B0 = 1;
    id.F = constant_one;
    id.G = [](double y, int p) {
        std::vector<double> c(p + 1, 0.0);
        c[0] = y;
        if (p >= 1) c[1] = 1;
        return c;
    };
    id.y = [](double x, int p) {
        std::vector<double> c(p + 1, 0.0);
        c[0] = x / (2 * (1 - x));
        for (int k = 1; k <= p; ++k) c[k] = 0.5 / std::pow(1 - x, k + 1);
        return c;
    };
    out.push_back(id);

    CompositionFamily geo;
    geo.name = "geometric";  // Phi = 1/(1-y), y = x/2
    geo.A0 = 1;
    geo.A1 = 1;
    geo.A2 = 2;
    geo.B0 = Q(1, 2);
    geo.F = constant_one;
    geo.G = [](double y, int p) {
        std::vector<double> c(p + 1);
        for (int k = 0; k <= p; ++k) c[k] = 1 / std::pow(1 - y, k + 1);
        return c;
    };
    geo.y = half_x;
    out.push_back(geo);

    CompositionFamily sep;
    sep.name = "saturating_separable";  // Phi = F(x) F(y) with F^{(j)}(0) = (j-2)!
    sep.A0 = Q(5, 4);
    sep.A1 = 1;
    sep.A2 = 1;
    sep.B0 = Q(1, 2);
    sep.F = saturating;
    sep.G = saturating;
    sep.y = half_x;
    out.push_back(sep);
    return out;
}

CompositionReport verify_composition_bound(const CompositionFamily& fam, int p, int samples)
{
    if (p < 1) throw DomainError("p must be at least 1");
    CompositionReport rep;
    rep.family = fam.name;
    rep.constants = friedman_constants(fam.A0, fam.A1, fam.A2, fam.B0);
    const double A0 = fam.A0.get_d(), A1 = fam.A1.get_d(), A2 = fam.A2.get_d(), B0 = fam.B0.get_d();
    const double B1 = rep.constants.B1.get_d(), Bt = rep.constants.B0_tilde.get_d();

    rep.rows.resize(p);
    for (int q = 1; q <= p; ++q) {
        rep.rows[q - 1].p = q;
        rep.rows[q - 1].bound = Bt * std::pow(B1, std::max(q - 2, 0)) * factorial_d(q - 2);
    }
    std::ostringstream note;
    for (int s = 0; s < samples; ++s) {
        const double x = fam.lo + (fam.hi - fam.lo) * s / (samples - 1);
        const auto F = fam.F(x, p);
        const auto y = fam.y(x, p);
        const auto G = fam.G(y[0], p);

        // hypotheses at this sample, derivative = k! * coefficient
        for (int j = 0; j <= p; ++j)
            for (int k = 0; j + k <= p; ++k) {
                const double d = std::abs(F[j] * factorial_d(j) * G[k] * factorial_d(k));
                const double b = A0 * std::pow(A1, j) * std::pow(A2, k) * factorial_d(j - 2) * factorial_d(k - 2);
                if (d > b * (1 + 1e-12) && rep.hypotheses_hold) {
                    rep.hypotheses_hold = false;
                    note << "Phi derivative (" << j << "," << k << ") exceeds its bound at x=" << x << "; ";
                }
            }
        for (int k = 0; k <= p; ++k) {
            const double d = std::abs(y[k] * factorial_d(k));
            const double b = B0 * std::pow(B1, std::max(k - 2, 0)) * factorial_d(k - 2);
            if (d > b * (1 + 1e-12) && rep.hypotheses_hold) {
                rep.hypotheses_hold = false;
                note << "y derivative " << k << " exceeds its bound at x=" << x << "; ";
            }
        }

        // h(x+s) = F(x+s) G(y(x) + delta(s))
        std::vector<double> delta = y;
        delta[0] = 0;
        std::vector<double> comp(p + 1, 0.0), pw(p + 1, 0.0);
        pw[0] = 1;
        for (int m = 0; m <= p; ++m) {
            for (int i = 0; i <= p; ++i) comp[i] += G[m] * pw[i];
            pw = mul_d(pw, delta, p);
        }
        const auto h = mul_d(F, comp, p);
        for (int q = 1; q <= p; ++q)
            rep.rows[q - 1].max_derivative = std::max(rep.rows[q - 1].max_derivative, std::abs(h[q]) * factorial_d(q));
    }
    for (auto& r : rep.rows) {
        r.margin = r.max_derivative > 0 ? r.bound / r.max_derivative : std::numeric_limits<double>::infinity();
        if (r.margin < 1) rep.holds = false;
    }
    rep.hypothesis_note = note.str();
    return rep;
}

}  // namespace phx
