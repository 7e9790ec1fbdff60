#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "log_series.hpp"
#include "singular_ode.hpp"

namespace phx {

// Lazy access to the components of V for a given v:
// v/t, v', D v/t, D v', D^2 v, v^2/t^3, v v'/t^2, v'^2/t (D = D_{x'}).
class ArgVector {
public:
    explicit ArgVector(LogSeries v) : v_(std::move(v)) {}

    int dim() const { return v_.dim(); }
    int order() const { return v_.order(); }
    const LogSeries& v() const { return v_; }
    const LogSeries& vt();
    const LogSeries& dx(int k);
    const LogSeries& dxt(int k);
    const LogSeries& dxx(int k, int l);

    LogSeries v_over_t() const { return v_.shift(-1); }
    LogSeries dx_over_t(int k) { return dx(k).shift(-1); }
    LogSeries v2_over_t3() const { return series_mul(v_, v_).shift(-3); }
    LogSeries vvt_over_t2() { return series_mul(v_, vt()).shift(-2); }
    LogSeries vt2_over_t() { return series_mul(vt(), vt()).shift(-1); }

private:
    LogSeries v_;
    std::optional<LogSeries> vt_;
    std::map<int, LogSeries> dx_, dxt_;
    std::map<std::pair<int, int>, LogSeries> dxx_;
};

using Recipe = std::function<LogSeries(ArgVector&)>;

struct SingularProblem {
    std::string name;
    NormalForm nf;
    int dim = 0;
    int weight = 0;  // truncation weight W: keep x'^a t^i log^j with i + |a| <= W
    Recipe F;
    int log_cap_n = 0;  // > 0: expect j <= floor((i-1)/n) (minimal graph)
    double bound_M = 1.0, bound_R = 1.0;
};

LogSeries apply_L0(const NormalForm& nf, const LogSeries& v);

// F(V) - L0 v.
LogSeries residual(const SingularProblem& prob, const LogSeries& v);

// Order-by-order triangular solve; the datum fills t^{m_high} (log t)^0.
// Stops after t-power `last_power` (default: all powers up to the weight).
LogSeries match_coefficients(const SingularProblem& prob, const TangentialPoly& datum,
                             std::optional<int> last_power = std::nullopt);

// Local coefficients c_2..c_{m_high-1}, c_{m_high,1}, c_{m_high+1,j>=1} plus
// the datum at t^{m_high}.
LogSeries seed_expansion(const SingularProblem& prob, const TangentialPoly& datum);

// Particular solution of L0 w = f with no kernel component.
LogSeries solve_L0(const NormalForm& nf, const LogSeries& f);

struct IterationStep {
    int k = 0;
    LogSeries w;
    int min_power = 0;  // lowest t-power in w_k (kExact if w_k = 0)
};

struct IterationTrace {
    std::vector<IterationStep> steps;
    int m_high = 0;
    int evaluations = 0;
};

struct IterationResult {
    LogSeries v;
    IterationTrace trace;
};

// w_k for k = m_high + 1 (v_prev2 empty) or later.
LogSeries picard_step(const SingularProblem& prob, const LogSeries& v_prev, const std::optional<LogSeries>& v_prev2);

IterationResult run_iteration(const SingularProblem& prob, const LogSeries& seed);

struct MajorantConfig {
    double s0 = 0.25;
    double a0 = 0.25;
    double theta = 0.5;
    int lattice = 32;
    int burn_in = 2;
    double pass_ratio = 0.6;
};

// a_k with the shifted index: a_{k+1} = a_k (1 - (k+2)^{-2}).
double a_sequence(const MajorantConfig& cfg, int k);

// Sampled M_k[f] = sup ||f(T,S)||_s / |T|^{m_high-1} * (a_k (s0-s)/delta - 1)
// along T = t, S = t log t, delta = |T| + theta |S|.
double sampled_majorant(const LogSeriesT<double>& f, const MajorantConfig& cfg, int k, int m_high);

struct MajorantRow {
    int k = 0;
    int min_power = 0;
    double a_k = 0;
    double w_over_T = 0, lambda_w_over_T = 0, dx_w = 0;
    double max_norm() const { return std::max({w_over_T, lambda_w_over_T, dx_w}); }
};

struct MajorantReport {
    std::vector<MajorantRow> rows;
    double ratio = 0;  // fitted geometric ratio after burn-in
    double A = 0;      // smallest A with max norm <= A / 2^k
    bool pass = false;
    std::string csv() const;
};

MajorantReport majorant_report(const IterationTrace& trace, const MajorantConfig& cfg);

}  // namespace phx
