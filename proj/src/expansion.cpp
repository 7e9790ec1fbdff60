#include "expansion.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phx {

const LogSeries& ArgVector::vt()
{
    if (!vt_) vt_ = series_ddt(v_);
    return *vt_;
}

const LogSeries& ArgVector::dx(int k)
{
    auto it = dx_.find(k);
    if (it == dx_.end()) it = dx_.emplace(k, v_.dx(k)).first;
    return it->second;
}

const LogSeries& ArgVector::dxt(int k)
{
    auto it = dxt_.find(k);
    if (it == dxt_.end()) it = dxt_.emplace(k, vt().dx(k)).first;
    return it->second;
}

const LogSeries& ArgVector::dxx(int k, int l)
{
    if (k > l) std::swap(k, l);
    auto it = dxx_.find({k, l});
    if (it == dxx_.end()) it = dxx_.emplace(std::pair{k, l}, dx(k).dx(l)).first;
    return it->second;
}

LogSeries apply_L0(const NormalForm& nf, const LogSeries& v) { return apply_euler_operator(v, nf.p, nf.q); }

namespace {

LogSeries eval_F(const SingularProblem& prob, const LogSeries& v)
{
    ArgVector V(v);
    LogSeries f = prob.F(V);
    if (f.dim() != v.dim()) throw std::logic_error(prob.name + ": recipe changed the tangential dimension");
    if (f.order() < v.order() - 2) throw std::logic_error(prob.name + ": recipe lost truncation order");
    return f;
}

}  // namespace

LogSeries residual(const SingularProblem& prob, const LogSeries& v)
{
    LogSeries r = eval_F(prob, v);
    r -= apply_L0(prob.nf, v);
    return r;
}

LogSeries match_coefficients(const SingularProblem& prob, const TangentialPoly& datum, std::optional<int> last_power)
{
    const NormalForm& nf = prob.nf;
    if (datum.dim() != prob.dim) throw DomainError("datum has the wrong tangential dimension");
    const int W = prob.weight;
    const int last = std::min(W, last_power.value_or(W));
    const Q gap = nf.gap();

    LogSeries v(prob.dim, W);
    for (int i = nf.m_low + 1; i <= last; ++i) {
        if (i == nf.m_high) v.add(i, 0, datum);
        const LogSeries R = residual(prob, v);
        if (R.min_power() < i - 2) throw std::logic_error(prob.name + ": residual below the current order");

        int J = -1;
        for (const auto& [k, p] : R.coeffs())
            if (k.first == i - 2) J = std::max(J, k.second);
        if (J < 0) continue;

        std::vector<TangentialPoly> Rj(J + 3, TangentialPoly(prob.dim, v.cap(i)));
        for (int j = 0; j <= J; ++j) Rj[j] = R.coeff(i - 2, j);

        if (i == nf.m_high) {
            // L0 (t^m log^j) = t^(m-2) [j gap log^(j-1) + j(j-1) log^(j-2)] at the resonance.
            std::vector<TangentialPoly> c(J + 3, TangentialPoly(prob.dim, v.cap(i)));
            for (int j = J; j >= 0; --j) {
                TangentialPoly rhs = Rj[j] - c[j + 2] * Q((j + 2) * (j + 1));
                c[j + 1] = rhs * (Q(1) / (gap * (j + 1)));
            }
            for (int j = 1; j <= J + 1; ++j) v.add(i, j, c[j]);
            continue;
        }

        const Q P = Q((i - nf.m_low) * (i - nf.m_high));
        const Q dP = Q(2 * i - nf.m_low - nf.m_high);
        std::vector<TangentialPoly> c(J + 3, TangentialPoly(prob.dim, v.cap(i)));
        for (int j = J; j >= 0; --j) {
            TangentialPoly rhs = Rj[j] - c[j + 1] * (dP * (j + 1)) - c[j + 2] * Q((j + 2) * (j + 1));
            c[j] = rhs * (Q(1) / P);
        }
        for (int j = 0; j <= J; ++j) v.add(i, j, c[j]);
    }
    return v;
}

LogSeries seed_expansion(const SingularProblem& prob, const TangentialPoly& datum)
{
    const int mh = prob.nf.m_high;
    if (prob.weight < mh + 1) throw DomainError("weight must be at least m_high + 1");
    LogSeries full = match_coefficients(prob, datum, mh + 1);
    LogSeries seed(prob.dim, prob.weight);
    for (const auto& [k, p] : full.coeffs()) {
        if (k.first == mh + 1 && k.second == 0) continue;
        seed.add(k.first, k.second, p);
    }
    return seed;
}

LogSeries solve_L0(const NormalForm& nf, const LogSeries& f)
{
    LogSeries w = weighted_antideriv(f, nf.m_high);
    w -= weighted_antideriv(f, nf.m_low);
    w *= Q(1) / Q(nf.gap());
    return w;
}

LogSeries picard_step(const SingularProblem& prob, const LogSeries& v_prev, const std::optional<LogSeries>& v_prev2)
{
    LogSeries Fk = eval_F(prob, v_prev);
    if (v_prev2) Fk -= eval_F(prob, *v_prev2);
    else Fk -= apply_L0(prob.nf, v_prev);
    return solve_L0(prob.nf, Fk);
}

IterationResult run_iteration(const SingularProblem& prob, const LogSeries& seed)
{
    const int mh = prob.nf.m_high;
    const int W = seed.order();
    if (W < mh + 1) throw DomainError("target order must be at least m_high + 1");

    IterationResult out;
    out.trace.m_high = mh;
    LogSeries v = seed;
    LogSeries F_prev = eval_F(prob, v);
    LogSeries Fk = F_prev - apply_L0(prob.nf, v);
    out.trace.evaluations = 1;

    const int max_steps = W - mh + 2;
    for (int k = mh + 1;; ++k) {
        if (k - mh > max_steps) throw std::logic_error(prob.name + ": iteration did not stabilize");
        LogSeries w = solve_L0(prob.nf, Fk);
        const int mp = w.min_power();
        if (mp < k) throw std::logic_error(prob.name + ": increment w_k has t-order below k");
        const bool done = w.zero();
        out.trace.steps.push_back({k, w, mp});
        if (done) break;
        v += w;
        LogSeries F_cur = eval_F(prob, v);
        ++out.trace.evaluations;
        Fk = F_cur - F_prev;
        F_prev = std::move(F_cur);
    }
    out.v = std::move(v);
    return out;
}

double a_sequence(const MajorantConfig& cfg, int k)
{
    double a = cfg.a0;
    for (int m = 0; m < k; ++m) a *= 1.0 - 1.0 / double((m + 2) * (m + 2));
    return a;
}

namespace {

// sum_a |sum_ij c_ij,a t^i log^j t| s^|a|
double tangential_norm(const LogSeriesT<double>& f, double s, double t)
{
    const double lt = std::log(t);
    std::map<Mono, double> acc;
    for (const auto& [k, p] : f.coeffs()) {
        const double w = std::pow(t, k.first) * std::pow(lt, k.second);
        for (const auto& [m, c] : p.terms()) acc[m] += c * w;
    }
    double r = 0;
    for (const auto& [m, c] : acc) r += std::abs(c) * std::pow(s, mono_deg(m));
    return r;
}

double solve_delta(double c, double theta)
{
    // t (1 + theta |log t|) = c on (0, 1), increasing there for theta < 1.
    double lo = -700, hi = 0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double t = std::exp(mid);
        if (t * (1 + theta * std::abs(mid)) < c) lo = mid;
        else hi = mid;
    }
    return std::exp(lo);
}

void check_cfg(const MajorantConfig& cfg)
{
    if (!(cfg.s0 > 0) || !(cfg.a0 > 0) || cfg.s0 * cfg.a0 >= 1) throw DomainError("majorant: need s0, a0 > 0 and s0*a0 < 1");
    if (!(cfg.theta >= 0 && cfg.theta < 1)) throw DomainError("majorant: theta must lie in [0, 1)");
    if (cfg.lattice < 2) throw DomainError("majorant: lattice too small");
}

}  // namespace

double sampled_majorant(const LogSeriesT<double>& f, const MajorantConfig& cfg, int k, int m_high)
{
    check_cfg(cfg);
    const double ak = a_sequence(cfg, k);
    if (ak * cfg.s0 < 1e-12) throw DomainError("majorant: empty sample region");
    const int N = cfg.lattice;
    double best = 0;
    for (int a = 0; a < N; ++a) {
        const double s = cfg.s0 * (a + 0.5) / N;
        const double c = ak * (cfg.s0 - s);
        const double tmax = solve_delta(c, cfg.theta);
        for (int b = 0; b < N; ++b) {
            const double t = tmax * (b + 0.5) / N;
            const double delta = t * (1 + cfg.theta * std::abs(std::log(t)));
            const double val = tangential_norm(f, s, t) / std::pow(t, m_high - 1) * (c / delta - 1);
            best = std::max(best, val);
        }
    }
    return best;
}

MajorantReport majorant_report(const IterationTrace& trace, const MajorantConfig& cfg)
{
    check_cfg(cfg);
    const int mh = trace.m_high;
    MajorantReport rep;
    int next_k = mh + 1;
    for (const auto& st : trace.steps) {
        MajorantRow row;
        row.k = st.k;
        row.min_power = st.min_power;
        row.a_k = a_sequence(cfg, st.k - mh - 1);
        if (!st.w.zero()) {
            const LogSeriesT<double> w = to_float(st.w);
            row.w_over_T = sampled_majorant(w.shift(-1), cfg, st.k - mh - 1, mh);
            row.lambda_w_over_T = sampled_majorant(series_ddt(w), cfg, st.k - mh - 1, mh);
            for (int x = 0; x < w.dim(); ++x)
                row.dx_w += sampled_majorant(w.dx(x), cfg, st.k - mh - 1, mh);
        }
        rep.rows.push_back(row);
        next_k = st.k + 1;
    }
    // Past stabilization every increment is exactly zero.
    while (rep.rows.size() < 4) {
        MajorantRow row;
        row.k = next_k;
        row.min_power = kExact;
        row.a_k = a_sequence(cfg, next_k - mh - 1);
        rep.rows.push_back(row);
        ++next_k;
    }

    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < rep.rows.size(); ++r) {
        const double N = rep.rows[r].max_norm();
        rep.A = std::max(rep.A, N * std::pow(2.0, rep.rows[r].k));
        if (r < static_cast<std::size_t>(cfg.burn_in) || N <= 0) continue;
        xs.push_back(rep.rows[r].k);
        ys.push_back(std::log(N));
    }
    if (xs.size() >= 2) {
        const double n = xs.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t r = 0; r < xs.size(); ++r) {
            sx += xs[r];
            sy += ys[r];
            sxx += xs[r] * xs[r];
            sxy += xs[r] * ys[r];
        }
        rep.ratio = std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
    }
    rep.pass = rep.ratio <= cfg.pass_ratio;
    return rep;
}

std::string MajorantReport::csv() const
{
    std::ostringstream os;
    os.precision(10);
    os << "k,ord,a_k,M_w_over_T,M_lambda_w_over_T,M_Dx_w,ratio\n";
    double prev = 0;
    for (const auto& r : rows) {
        const double N = r.max_norm();
        os << r.k << ',' << (r.min_power >= kExact ? std::string("inf") : std::to_string(r.min_power)) << ','
           << r.a_k << ',' << r.w_over_T << ',' << r.lambda_w_over_T << ',' << r.dx_w << ',';
        if (prev > 0) os << N / prev;
        os << '\n';
        prev = N;
    }
    return os.str();
}

}  // namespace phx
