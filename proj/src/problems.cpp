#include "problems.hpp"

namespace phx {

namespace {

Q qpow(const Q& x, int e)
{
    Q r = 1;
    const Q b = e < 0 ? Q(1) / x : x;
    for (int k = 0; k < std::abs(e); ++k) r *= b;
    return r;
}

// binom(alpha, k) for rational alpha
Q binom(const Q& alpha, int k)
{
    Q c = 1;
    for (int m = 0; m < k; ++m) {
        c *= alpha - m;
        c /= m + 1;
    }
    return c;
}

LogSeries one_series(int dim) { return LogSeries::monomial(dim, kExact, 0, 0, 1); }

LogSeries constant_series(const TangentialPoly& p) { return LogSeries::constant(p.dim(), p); }

}  // namespace

TangentialPoly radial_poly(int dim, int max_degree, const std::vector<Q>& a)
{
    TangentialPoly r2(dim, max_degree);
    for (int k = 0; k < dim; ++k) {
        std::vector<int> e(dim);
        e[k] = 2;
        r2.add_term(make_mono(e), 1);
    }
    TangentialPoly out(dim, max_degree);
    TangentialPoly pw = TangentialPoly::constant(dim, max_degree, 1);
    for (std::size_t k = 0; k < a.size() && 2 * int(k) <= max_degree; ++k) {
        if (a[k] != 0) out += pw * a[k];
        if (dim == 0) break;
        pw = pw * r2;
    }
    return out;
}

TangentialPoly sphere_graph(int dim, const Q& R, int max_degree)
{
    if (R <= 0) throw DomainError("sphere radius must be positive");
    std::vector<Q> a(max_degree / 2 + 1);
    for (int m = 1; m < int(a.size()); ++m) {
        a[m] = binom(frac(1, 2), m) * qpow(R, 1 - 2 * m);
        if (m % 2) a[m] = -a[m];
    }
    return radial_poly(dim, max_degree, a);
}

SingularProblem minimal_graph_problem(int n, const TangentialPoly& phi, int weight)
{
    if (n < 2) throw DomainError("minimal graph: n must be at least 2");
    const int dim = n - 1;
    if (phi.dim() != dim) throw DomainError("minimal graph: phi must have n-1 variables");
    for (const auto& [m, c] : phi.terms())
        if (mono_deg(m) < 2) throw DomainError("minimal graph: phi must vanish to second order at 0");

    TangentialPoly ph = phi;
    ph.truncate(weight);
    std::vector<LogSeries> Dphi;
    std::vector<std::vector<LogSeries>> D2phi(dim);
    for (int k = 0; k < dim; ++k) {
        Dphi.push_back(constant_series(ph.derivative(k)));
        for (int l = 0; l < dim; ++l) D2phi[k].push_back(constant_series(ph.derivative(k).derivative(l)));
    }

    SingularProblem p;
    p.name = "minimal_graph(n=" + std::to_string(n) + ")";
    p.nf = NormalForm::from_roots(0, n + 1);
    p.dim = dim;
    p.weight = weight;
    p.log_cap_n = n;
    p.F = [=](ArgVector& V) {
        const int W = V.order();
        std::vector<LogSeries> a;
        for (int k = 0; k < dim; ++k) a.push_back(Dphi[k] + V.dx(k));
        const LogSeries& vt = V.vt();
        const LogSeries vt2 = series_mul(vt, vt);

        LogSeries G(dim, kExact), lap(dim, kExact), Q1(dim, kExact), Q2(dim, kExact);
        for (int k = 0; k < dim; ++k) {
            G += series_mul(a[k], a[k]);
            lap += D2phi[k][k] + V.dxx(k, k);
            LogSeries b(dim, kExact);
            for (int l = 0; l < dim; ++l) b += series_mul(D2phi[k][l] + V.dxx(k, l), a[l]);
            Q1 += series_mul(a[k], b);
            Q2 += series_mul(a[k], V.dxt(k));
        }

        LogSeries bracket = series_mul(vt, vt2.shift(-1)) * Q(n);
        bracket -= lap;
        bracket -= series_mul(G + vt2, lap);
        bracket += Q1;
        bracket += series_mul(vt, Q2) * Q(2);

        if (G.zero()) return bracket;
        // 1/(1+G) with G of positive valuation
        const LogSeries g = compose_analytic(TaylorData::geometric(W + 2, -1), {G});
        return series_mul(g, bracket);
    };
    return p;
}

SingularProblem loewner_nirenberg_problem(const LNGeometry& geom, int weight)
{
    const int n = geom.n;
    if (n < 3) throw DomainError("Loewner-Nirenberg: n must be at least 3");
    const Q gamma = frac(n + 2, n - 2);
    const Q c = frac(n * (n - 2), 4);

    // (1+v)^gamma - 1 - gamma v
    TaylorData bin = TaylorData::binomial(gamma, weight + 2);
    bin.coeffs.erase(std::vector<int>{0});
    bin.coeffs.erase(std::vector<int>{1});
    auto bracket = [bin, c](const LogSeries& v) {
        if (v.zero()) return LogSeries(v.dim(), kExact);
        return compose_analytic(bin, {v}).shift(-2) * c;
    };

    SingularProblem p;
    p.nf = NormalForm::from_roots(-1, n);
    p.weight = weight;
    if (geom.shape == LNShape::HalfSpace) {
        const int dim = n - 1;
        p.name = "ln_halfspace(n=" + std::to_string(n) + ")";
        p.dim = dim;
        p.F = [=](ArgVector& V) {
            LogSeries f = bracket(V.v());
            LogSeries lap(dim, kExact);
            for (int k = 0; k < dim; ++k) lap += V.dxx(k, k);
            f -= lap;
            return f;
        };
        return p;
    }

    p.name = "ln_ball(n=" + std::to_string(n) + ")";
    p.dim = 0;
    p.F = [=](ArgVector& V) {
        const int W = V.order();
        // -Delta d = (n-1)/(1-t)
        LogSeries g(0, W);
        for (int m = 0; m <= W; ++m) g.add(m, 0, TangentialPoly::constant(0, kExact, 1));
        LogSeries f = series_mul(g, V.vt()) * Q(n - 1);
        f -= series_mul(g, one_series(0) + V.v()).shift(-1) * frac((n - 2) * (n - 1), 2);
        f += bracket(V.v());
        return f;
    };
    return p;
}

SingularProblem homogeneous_problem(int m_low, int m_high, int dim, int weight)
{
    SingularProblem p;
    p.name = "homogeneous";
    p.nf = NormalForm::from_roots(m_low, m_high);
    p.dim = dim;
    p.weight = weight;
    p.F = [dim](ArgVector& V) { return LogSeries(dim, ord_add(V.order(), -2)); };
    return p;
}

SingularProblem synthetic_problem(int m_low, int m_high, int weight, const Q& forcing0, const Q& planted,
                                  const Q& quadratic)
{
    SingularProblem p;
    p.name = "synthetic";
    p.nf = NormalForm::from_roots(m_low, m_high);
    p.dim = 0;
    p.weight = weight;
    p.F = [=](ArgVector& V) {
        LogSeries f(0, kExact);
        f.add(0, 0, TangentialPoly::constant(0, kExact, forcing0));
        f.add(m_high - 2, 0, TangentialPoly::constant(0, kExact, planted));
        if (quadratic != 0) {
            const LogSeries vt = V.v_over_t();
            f += series_mul(vt, vt) * quadratic;
        }
        f.truncate(ord_add(V.order(), -2));
        return f;
    };
    return p;
}

LNLocalCoeffs ln_local_coeffs(int n, const Q& H, const Q& K, const Q& lapH)
{
    if (n < 3) throw DomainError("Loewner-Nirenberg: n must be at least 3");
    LNLocalCoeffs r;
    r.c1 = Q(n - 2) * H / Q(4 * (n - 1));
    if (n == 3) r.c31 = -(lapH + 2 * H * (H * H - K)) / 16;
    return r;
}

LNConventionAudit ln_convention_audit(int n)
{
    // Unit sphere: all principal curvatures 1; K is the Gauss curvature for n = 3.
    LNConventionAudit a;
    a.sum = ln_local_coeffs(n, Q(n - 1), 1, 0);
    a.mean = ln_local_coeffs(n, 1, 1, 0);
    const LogSeries exact = ln_ball_oracle(n, n + 1);
    a.exact_c1 = exact.coeff(1, 0).constant_term();
    a.exact_c31 = exact.coeff(3, 1).constant_term();
    return a;
}

TangentialPoly log_obstruction(const SingularProblem& prob, const TangentialPoly& datum)
{
    const int mh = prob.nf.m_high;
    if (prob.weight < mh) throw DomainError("log obstruction needs weight at least m_high");
    return match_coefficients(prob, datum, mh).coeff(mh, 1);
}

bool log_caps_hold(const LogSeries& s, int n)
{
    for (const auto& kv : s.coeffs()) {
        const auto [i, j] = kv.first;
        if (j > 0 && (i < 1 || j > (i - 1) / n)) return false;
    }
    return true;
}

LogSeries hemisphere_oracle(int n, const Q& R, int weight)
{
    const int dim = n - 1;
    LogSeries v(dim, weight);
    // sqrt(rho^2 - t^2) - rho = sum_k binom(1/2,k) (-t^2)^k rho^{1-2k},  rho^2 = R^2 - |x'|^2
    for (int k = 1; 2 * k <= weight; ++k) {
        Q bk = binom(frac(1, 2), k);
        if (k % 2) bk = -bk;
        const int cap = weight - 2 * k;
        std::vector<Q> a(cap / 2 + 1);
        for (int m = 0; m < int(a.size()); ++m) {
            a[m] = bk * binom(frac(1 - 2 * k, 2), m) * qpow(R, 1 - 2 * k - 2 * m);
            if (m % 2) a[m] = -a[m];
        }
        v.add(2 * k, 0, radial_poly(dim, cap, a));
    }
    return v;
}

LogSeries ln_ball_oracle(int n, int weight)
{
    LogSeries v(0, weight);
    const Q alpha = frac(-(n - 2), 2);
    for (int k = 1; k <= weight; ++k)
        v.add(k, 0, TangentialPoly::constant(0, kExact, binom(alpha, k) * qpow(frac(-1, 2), k)));
    return v;
}

ProblemInstance hemisphere_instance(int n, const Q& R, int K, int tangential_degree)
{
    const int W = K + tangential_degree;
    ProblemInstance in;
    in.K = K;
    in.prob = minimal_graph_problem(n, sphere_graph(n - 1, R, W), W);
    in.prob.name = "hemisphere(n=" + std::to_string(n) + ")";
    in.prob.bound_R = R.get_d();
    in.oracle = hemisphere_oracle(n, R, W);
    in.datum = in.oracle->coeff(n + 1, 0);
    return in;
}

ProblemInstance ln_ball_instance(int n, int K)
{
    ProblemInstance in;
    in.K = K;
    in.prob = loewner_nirenberg_problem({n, LNShape::Ball}, K);
    in.oracle = ln_ball_oracle(n, K);
    in.datum = in.oracle->coeff(n, 0);
    return in;
}

ProblemInstance ln_halfspace_instance(int n, int K, int tangential_degree, const TangentialPoly& datum)
{
    const int W = K + tangential_degree;
    ProblemInstance in;
    in.K = K;
    in.prob = loewner_nirenberg_problem({n, LNShape::HalfSpace}, W);
    in.datum = datum;
    in.datum.truncate(W - n);
    return in;
}

}  // namespace phx
