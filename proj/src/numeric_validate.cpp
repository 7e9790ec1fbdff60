#include "numeric_validate.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace phx {

Real to_real(const Q& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

RadialODE ln_ball_ode(int n)
{
    if (n < 3) throw DomainError("Loewner-Nirenberg: n must be at least 3");
    const double gamma = double(n + 2) / (n - 2);
    const double c = n * (n - 2) / 4.0;
    RadialODE o;
    o.name = "ln_ball(n=" + std::to_string(n) + ")";
    o.eval = [=](double t, double v, double y, double z) {
        const double tg = t / (1 - t);
        const double B = std::pow(1 + v, gamma) - 1 - gamma * v;
        const double dB = gamma * (std::pow(1 + v, gamma - 1) - 1);
        const double a = 0.5 * (n - 2) * (n - 1);
        const double G = z - (n - 2) * y - n * v - ((n - 1) * tg * y - a * tg * (1 + v) + c * B);
        return std::array<double, 4>{G, -n + a * tg - c * dB, -(n - 2) - (n - 1) * tg, 1.0};
    };
    return o;
}

RadialODE hemisphere_slice_ode(int n, double R)
{
    RadialODE o;
    o.name = "hemisphere_slice(n=" + std::to_string(n) + ")";
    o.eval = [=](double t, double, double y, double z) {
        const double D = -(n - 1) / std::sqrt(R * R - t * t);
        const double w = y * y / (t * t);
        const double G = z - n * (1 + w) * y + (1 + w) * t * t * D;
        return std::array<double, 4>{G, 0.0, -n * (1 + 3 * w) + 2 * y * D, 1.0};
    };
    return o;
}

RadialODE linear_ode(const NormalForm& nf)
{
    RadialODE o;
    o.name = "linear";
    const double p = nf.p, q = nf.q;
    o.eval = [=](double, double v, double y, double z) { return std::array<double, 4>{z + p * y + q * v, q, p, 1.0}; };
    return o;
}

namespace {

double max_abs(const std::vector<double>& x)
{
    double m = 0;
    for (double a : x) m = std::max(m, std::abs(a));
    return m;
}

}  // namespace

GridSolution fd_solve_radial(const RadialODE& ode, double v_inner, double v_outer, const GridSpec& spec,
                             const std::function<double(double)>& guess)
{
    if (!(spec.t_min > 0) || !(spec.r > spec.t_min)) throw DomainError("grid: need 0 < t_min < r");
    if (spec.points < 5) throw DomainError("grid: too few points");
    if (!(spec.tol > 0)) throw DomainError("grid: tolerance must be positive");
    const int N = spec.points - 1;
    const double s0 = std::log(spec.t_min), h = (std::log(spec.r) - s0) / N;

    GridSolution g;
    g.t.resize(N + 1);
    g.v.resize(N + 1);
    for (int i = 0; i <= N; ++i) {
        g.t[i] = std::exp(s0 + i * h);
        g.v[i] = guess ? guess(g.t[i]) : v_inner + (v_outer - v_inner) * i / double(N);
    }
    g.t[0] = spec.t_min;
    g.t[N] = spec.r;
    g.v[0] = v_inner;
    g.v[N] = v_outer;

    std::vector<double> res(N + 1), lo(N + 1), di(N + 1), up(N + 1);
    auto assemble = [&](const std::vector<double>& v, bool jac) {
        for (int i = 1; i < N; ++i) {
            const double y = (v[i + 1] - v[i - 1]) / (2 * h);
            const double z = (v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h) - y;
            const auto e = ode.eval(g.t[i], v[i], y, z);
            res[i] = e[0];
            if (!std::isfinite(res[i])) throw ValidationError(ode.name + ": residual not finite at t=" + std::to_string(g.t[i]));
            if (jac) {
                lo[i] = -e[2] / (2 * h) + e[3] * (1 / (h * h) + 1 / (2 * h));
                di[i] = e[1] - 2 * e[3] / (h * h);
                up[i] = e[2] / (2 * h) + e[3] * (1 / (h * h) - 1 / (2 * h));
            }
        }
        res[0] = res[N] = 0;
        return max_abs(res);
    };

    double norm = assemble(g.v, true);
    g.log.push_back({0, norm, 0});
    // second differences of O(1) data carry rounding of order eps |v| / h^2
    auto target = [&] { return std::max(spec.tol, 64 * std::numeric_limits<double>::epsilon() * (1 + max_abs(g.v)) / (h * h)); };
    for (int it = 1; norm > target(); ++it) {
        if (it > spec.max_newton) {
            std::ostringstream os;
            os << ode.name << ": Newton did not converge; residual/halvings trace:";
            for (const auto& s : g.log) os << ' ' << s.residual << '/' << s.halvings;
            throw ValidationError(os.str());
        }
        // Thomas algorithm for J dv = -res on the interior
        std::vector<double> c(N + 1), d(N + 1), dv(N + 1, 0.0);
        for (int i = 1; i < N; ++i) {
            const double m = di[i] - (i > 1 ? lo[i] * c[i - 1] : 0.0);
            if (m == 0) throw ValidationError(ode.name + ": singular Jacobian");
            c[i] = up[i] / m;
            d[i] = (-res[i] - (i > 1 ? lo[i] * d[i - 1] : 0.0)) / m;
        }
        for (int i = N - 1; i >= 1; --i) dv[i] = d[i] - (i < N - 1 ? c[i] * dv[i + 1] : 0.0);

        double step = 1;
        int halvings = 0;
        std::vector<double> trial(g.v);
        double tnorm = 0;
        for (;; ++halvings) {
            for (int i = 1; i < N; ++i) trial[i] = g.v[i] + step * dv[i];
            bool finite = true;
            try {
                tnorm = assemble(trial, false);
            } catch (const ValidationError&) {
                finite = false;
            }
            if (finite && tnorm < norm) break;
            if (halvings >= spec.max_halvings) {
                std::ostringstream os;
                os << ode.name << ": damping failed after " << halvings << " halvings at Newton step " << it
                   << " (residual " << norm << ")";
                throw ValidationError(os.str());
            }
            step /= 2;
        }
        g.v = trial;
        norm = assemble(g.v, true);
        g.log.push_back({it, norm, halvings});
        if (max_abs(dv) * step < 1e-15 * (1 + max_abs(g.v)) && norm > target())
            throw ValidationError(ode.name + ": Newton stalled at residual " + std::to_string(norm));
    }
    g.residual = norm;
    return g;
}

GridSolution fd_solve_richardson(const RadialODE& ode, double v_inner, double v_outer, const GridSpec& spec,
                                 const std::function<double(double)>& guess)
{
    GridSolution coarse = fd_solve_radial(ode, v_inner, v_outer, spec, guess);
    GridSpec fs = spec;
    fs.points = 2 * (spec.points - 1) + 1;
    const GridSolution fine = fd_solve_radial(ode, v_inner, v_outer, fs, guess);
    for (std::size_t i = 0; i < coarse.v.size(); ++i) coarse.v[i] = (4 * fine.v[2 * i] - coarse.v[i]) / 3;
    coarse.residual = std::max(coarse.residual, fine.residual);
    coarse.log.insert(coarse.log.end(), fine.log.begin(), fine.log.end());
    return coarse;
}

double max_error(const GridSolution& g, const std::function<double(double)>& exact)
{
    double e = 0;
    for (std::size_t i = 0; i < g.t.size(); ++i) e = std::max(e, std::abs(g.v[i] - exact(g.t[i])));
    return e;
}

std::vector<Sample> sample_function(const std::function<Real(const Real&)>& u, double t_min, int count)
{
    std::vector<Sample> out;
    const Real lo = log(Real(10 * t_min)), hi = log(Real(1000 * t_min));
    for (int i = 0; i < count; ++i) {
        const Real t = exp(lo + (hi - lo) * i / (count - 1));
        out.push_back({t, u(t)});
    }
    return out;
}

std::vector<Sample> sample_grid(const GridSolution& g)
{
    std::vector<Sample> out;
    for (std::size_t i = 0; i < g.t.size(); ++i) out.push_back({Real(g.t[i]), Real(g.v[i])});
    return out;
}

std::vector<SlopeRow> remainder_slopes(const std::vector<Sample>& samples, const LogSeries& series,
                                       const std::vector<int>& ks, double t_min, double noise)
{
    const double w_lo = 10 * t_min * (1 - 1e-12), w_hi = 1000 * t_min * (1 + 1e-12);
    Real t_top = 0;
    for (const auto& s : samples) t_top = std::max(t_top, s.t);
    if (t_top < w_hi * (1 - 1e-9)) throw DomainError("remainder window extends past the sampled range");
    std::vector<const Sample*> win;
    for (const auto& s : samples)
        if (s.t >= w_lo && s.t <= w_hi) win.push_back(&s);
    if (win.size() < 3) throw DomainError("remainder window [10 t_min, 1000 t_min] holds fewer than 3 samples");

    std::map<Pow, Real> c;
    for (const auto& [k, p] : series.coeffs()) {
        const Q c0 = p.constant_term();
        if (c0 != 0) c[k] = to_real(c0);
    }

    std::vector<SlopeRow> rows;
    for (int k : ks) {
        SlopeRow row;
        row.k = k;
        row.expected = -1;
        for (const auto& [key, val] : c)
            if (key.first > k) {
                row.expected = key.first;
                break;
            }
        std::vector<double> xs, ys;
        Real prev = -1;
        bool monotone = true;
        for (const Sample* s : win) {
            const Real lt = log(s->t);
            Real sk = 0;
            for (const auto& [key, val] : c)
                if (key.first <= k) sk += val * pow(s->t, key.first) * pow(lt, key.second);
            const Real rem = abs(s->u - sk);
            if (rem <= noise) row.saturated = true;
            if (rem <= prev) monotone = false;
            prev = rem;
            xs.push_back(static_cast<double>(lt));
            ys.push_back(rem > 0 ? static_cast<double>(log(rem)) : -1e300);
        }
        if (!monotone) row.saturated = true;
        if (!row.saturated) {
            const double n = xs.size();
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            row.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            row.ok = row.expected >= 0 && std::abs(row.slope - row.expected) <= 0.2;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string slopes_csv(const std::vector<SlopeRow>& rows)
{
    std::ostringstream os;
    os.precision(8);
    os << "k,slope,expected,saturated,ok\n";
    for (const auto& r : rows) {
        os << r.k << ',';
        if (!r.saturated) os << r.slope;
        os << ',' << r.expected << ',' << (r.saturated ? 1 : 0) << ',' << (r.ok ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string grid_csv(const GridSolution& g, const std::function<double(double)>& exact)
{
    std::ostringstream os;
    os.precision(17);
    os << "t,v,exact,error\n";
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double e = exact ? exact(g.t[i]) : std::numeric_limits<double>::quiet_NaN();
        os << g.t[i] << ',' << g.v[i] << ',' << e << ',' << g.v[i] - e << '\n';
    }
    return os.str();
}

GrowthFit tangential_growth_fit(const TangentialPoly& c)
{
    GrowthFit fit;
    const int dim = c.dim();
    int maxdeg = 0;
    for (const auto& [m, v] : c.terms()) maxdeg = std::max(maxdeg, mono_deg(m));
    fit.norms.assign(maxdeg + 1, 0.0);

    std::vector<std::vector<double>> dirs;
    for (int a = 0; a < dim; ++a) {
        std::vector<double> e(dim);
        e[a] = 1;
        dirs.push_back(e);
        for (int b = a + 1; b < dim; ++b)
            for (double sgn : {1.0, -1.0}) {
                std::vector<double> f(dim);
                f[a] = M_SQRT1_2;
                f[b] = sgn * M_SQRT1_2;
                dirs.push_back(f);
            }
    }
    std::mt19937 rng(20240601);
    std::normal_distribution<double> gauss;
    for (int r = 0; dim > 1 && r < 256; ++r) {
        std::vector<double> e(dim);
        double n2 = 0;
        for (auto& x : e) {
            x = gauss(rng);
            n2 += x * x;
        }
        for (auto& x : e) x /= std::sqrt(n2);
        dirs.push_back(e);
    }
    for (const auto& e : dirs) {
        std::vector<double> part(maxdeg + 1, 0.0);
        for (const auto& [m, v] : c.terms()) {
            double x = v.get_d();
            for (int k = 0; k < dim; ++k) x *= std::pow(e[k], mono_exp(m, k));
            part[mono_deg(m)] += x;
        }
        for (int l = 0; l <= maxdeg; ++l) fit.norms[l] = std::max(fit.norms[l], std::abs(part[l]));
    }

    const double top = *std::max_element(fit.norms.begin(), fit.norms.end());
    std::vector<double> xs, ys;
    for (int l = 1; l <= maxdeg; ++l)
        if (fit.norms[l] > 1e-14 * top) {
            xs.push_back(l);
            ys.push_back(std::log(fit.norms[l]));
        }
    if (xs.size() < 2) {
        fit.degenerate = true;
        fit.radius = std::numeric_limits<double>::infinity();
        return fit;
    }
    const double n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) ss += std::pow(ys[i] - icpt - slope * xs[i], 2);
    fit.fit_residual = std::sqrt(ss / n);
    fit.B = std::exp(slope);
    fit.radius = 1 / fit.B;
    return fit;
}

GrowthFit tangential_growth_fit(const LogSeries& series)
{
    const TangentialPoly c2 = series.coeff(2, 0);
    if (series.dim() == 0 || c2.max_degree() < 6) throw DomainError("growth fit needs tangential degree >= 6 in c2");
    return tangential_growth_fit(c2);
}

QuasilinearForm minimal_graph_form(int n, double R)
{
    QuasilinearForm f;
    f.name = "minimal_graph(n=" + std::to_string(n) + ")";
    f.along_solution = [=](double t) {
        const double ut = -t / std::sqrt(R * R - t * t);
        const double g = 1 + ut * ut;
        QuasilinearSample s;
        s.A_nn = 1 - ut * ut / g;
        s.P = -n;
        s.Q = 0;
        s.lambda = g;
        return s;
    };
    return f;
}

QuasilinearForm ln_ball_form(int n)
{
    QuasilinearForm f;
    f.name = "ln_ball(n=" + std::to_string(n) + ")";
    const double gamma = double(n + 2) / (n - 2);
    f.along_solution = [=](double t) {
        const double v = std::pow(1 - t / 2, -(n - 2) / 2.0) - 1;
        const double tg = t / (1 - t);
        const double BoverV = (std::pow(1 + v, gamma) - 1 - gamma * v) / v;
        QuasilinearSample s;
        s.A_nn = 1;
        s.P = -(n - 2) - (n - 1) * tg;
        s.Q = -n + 0.5 * (n - 2) * (n - 1) * tg - n * (n - 2) / 4.0 * BoverV;
        return s;
    };
    return f;
}

MarginReport negativity_margin(const QuasilinearForm& form, double t_lo, double t_hi, int samples)
{
    MarginReport r;
    r.max_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double t = t_lo * std::pow(t_hi / t_lo, i / double(samples - 1));
        const auto s = form.along_solution(t);
        r.max_value = std::max(r.max_value, 2 * s.A_nn + 2 * s.P + s.Q);
        r.lambda = std::max(r.lambda, s.lambda);
    }
    r.c0 = -r.max_value;
    return r;
}

}  // namespace phx
