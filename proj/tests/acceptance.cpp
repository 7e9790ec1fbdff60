// One line per acceptance criterion; exit status 1 if any is red.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "friedman.hpp"
#include "numeric_validate.hpp"
#include "problems.hpp"

using namespace phx;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream note;
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            note << what << "; ";
        }
    }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.note << "exception: " << e.what();
    }
    if (!o.ok) ++failures;
    std::printf("criterion %d %-34s %s  %s\n", id, title.c_str(), o.ok ? "PASS" : "FAIL", o.note.str().c_str());
    std::fflush(stdout);
}

std::string cfg_dir;

struct Shipped {
    std::string file;
    ProblemInstance in;
    LogSeries matched, iterated;
    IterationTrace trace;
    double match_s = 0, iterate_s = 0;  // CPU seconds
};

double cpu_since(std::clock_t t0) { return double(std::clock() - t0) / CLOCKS_PER_SEC; }

std::vector<Shipped> shipped;

void solve_shipped()
{
    for (const char* f : {"hemisphere_n3", "hemisphere_n4", "ln_halfspace_n3", "ln_halfspace_n4", "ln_halfspace_n5",
                          "ln_halfspace_n6", "ln_ball_n3", "ln_ball_n4", "ln_ball_n6"}) {
        Shipped s;
        s.file = f;
        const auto cfg = load_config(cfg_dir + "/" + f + ".ini");
        s.in = build_instance(cfg.problem);
        auto t0 = std::clock();
        s.matched = match_coefficients(s.in.prob, s.in.datum);
        s.match_s = cpu_since(t0);
        t0 = std::clock();
        auto it = run_iteration(s.in.prob, seed_expansion(s.in.prob, s.in.datum));
        s.iterate_s = cpu_since(t0);
        s.iterated = std::move(it.v);
        s.trace = std::move(it.trace);
        shipped.push_back(std::move(s));
    }
}

double ball_exact(int n, double t) { return std::pow(1 - t / 2, -(n - 2) / 2.0) - 1; }

}  // namespace

int main(int argc, char** argv)
{
    cfg_dir = argc > 1 ? argv[1] : "configs";
    try {
        solve_shipped();
    } catch (const std::exception& e) {
        std::printf("setup failed: %s\n", e.what());
        return 1;
    }

    report(1, "match == iterate, < 10 s", [](Outcome& o) {
        double worst = 0;
        for (const auto& s : shipped) {
            o.require(s.matched == s.iterated, s.file + " differs");
            o.require(s.in.K >= 12, s.file + " K < 12");
            o.require(s.match_s < 10 && s.iterate_s < 10, s.file + " too slow");
            worst = std::max({worst, s.match_s, s.iterate_s});
        }
        o.note << shipped.size() << " problems, slowest method " << worst << " s CPU";
    });

    report(2, "hemisphere oracle through K=12", [](Outcome& o) {
        for (const auto& s : shipped) {
            if (s.file.rfind("hemisphere", 0) != 0) continue;
            o.require(s.matched.same_terms(*s.in.oracle), s.file + " differs from the Taylor series");
            o.require(s.matched.max_log() == 0, s.file + " has log terms");
            o.require(s.matched.max_power() >= 12, s.file + " too short");
            o.note << s.file << " dim " << s.matched.dim() << " weight " << s.in.prob.weight << "; ";
        }
    });

    report(3, "LN ball oracle through K=10", [](Outcome& o) {
        for (int n : {3, 4, 6}) {
            auto in = ln_ball_instance(n, 10);
            auto v = match_coefficients(in.prob, in.datum);
            o.require(v == *in.oracle, "n=" + std::to_string(n) + " differs from the binomial series");
            o.require(v.coeff(n, 1).zero(), "c_{n,1} != 0 for n=" + std::to_string(n));
            o.require(v.max_power() == 10, "n=" + std::to_string(n) + " short");
        }
    });

    report(4, "resonance f/(m_high-m_low), log caps", [](Outcome& o) {
        int cases = 0;
        for (auto [lo, hi] : {std::pair{0, 3}, {0, 4}, {-1, 3}, {-1, 5}, {-2, 4}, {0, 7}})
            for (const Q& f : {Q(1), frac(-7, 3), frac(5, 2)}) {
                const std::string tag = "roots (" + std::to_string(lo) + "," + std::to_string(hi) + ")";
                auto p = synthetic_problem(lo, hi, hi + 3, frac(1, 3), f, 0);
                const Q c = match_coefficients(p, TangentialPoly(0, 3)).coeff(hi, 1).constant_term();
                o.require(c == f / (hi - lo), tag);

                // with a nonlinearity the forcing is the full t^{m_high-2} coefficient of F(local part)
                auto pq = synthetic_problem(lo, hi, hi + 3, frac(1, 3), f, frac(1, 5));
                auto v = match_coefficients(pq, TangentialPoly(0, 3));
                LogSeries local(0, hi + 3);
                for (const auto& [k, c0] : v.coeffs())
                    if (k.first < hi) local.add(k.first, k.second, c0);
                ArgVector V(local);
                const Q forcing = pq.F(V).coeff(hi - 2, 0).constant_term();
                o.require(v.coeff(hi, 1).constant_term() == forcing / (hi - lo), tag + " nonlinear");
                cases += 2;
            }
        const auto mg = load_config(cfg_dir + "/minimal_graph_n3.ini");
        auto in = build_instance(mg.problem);
        auto v = match_coefficients(in.prob, in.datum);
        o.require(log_caps_hold(v, 3), "minimal graph log caps");
        o.require(v.max_log() == 3, "minimal graph max log");
        o.note << cases << " resonant cases, minimal graph n=3 max log " << v.max_log();
    });

    report(5, "majorant ratio <= 0.6 after burn-in", [](Outcome& o) {
        MajorantConfig cfg;
        double worst = 0;
        for (const auto& s : shipped) {
            auto r = majorant_report(s.trace, cfg);
            o.require(r.pass, s.file + " ratio " + std::to_string(r.ratio));
            worst = std::max(worst, r.ratio);
        }
        o.note << "worst ratio " << worst;
    });

    report(6, "residual zero through K-2", [](Outcome& o) {
        for (const auto& s : shipped) {
            for (const LogSeries* v : {&s.matched, &s.iterated}) {
                auto r = residual(s.in.prob, *v);
                o.require(r.zero(), s.file + " residual nonzero");
                o.require(r.order() >= s.in.K - 2, s.file + " residual order too low");
            }
        }
    });

    report(7, "FD error <= 1e-8, slopes +-0.2", [](Outcome& o) {
        GridSpec spec;
        double worst_err = 0, worst_slope = 0;
        auto slopes = [&](const LogSeries& ser, const std::function<Real(const Real&)>& u, int K, const std::string& tag) {
            std::vector<int> ks;
            for (int k = 1; k <= K - 2; ++k) ks.push_back(k);
            for (const auto& r : remainder_slopes(sample_function(u, spec.t_min), ser, ks, spec.t_min, 1e-40)) {
                const double d = std::abs(r.slope - r.expected);
                worst_slope = std::max(worst_slope, d);
                o.require(!r.saturated && d <= 0.2, tag + " k=" + std::to_string(r.k));
            }
        };
        for (int n : {3, 4, 6}) {
            auto ex = [n](double t) { return ball_exact(n, t); };
            auto g = fd_solve_richardson(ln_ball_ode(n), ex(spec.t_min), ex(spec.r), spec);
            const double e = max_error(g, ex);
            worst_err = std::max(worst_err, e);
            o.require(e <= 1e-8, "ball n=" + std::to_string(n) + " fd");
            auto in = ln_ball_instance(n, 12);
            slopes(match_coefficients(in.prob, in.datum),
                   [n](const Real& t) { return Real(pow(1 - t / 2, Real(-(n - 2)) / 2) - 1); }, 12,
                   "ball n=" + std::to_string(n));
        }
        auto hemi = [](double t) { return std::sqrt(1 - t * t) - 1; };
        for (int n : {3, 4}) {
            auto g = fd_solve_richardson(hemisphere_slice_ode(n, 1), hemi(spec.t_min), hemi(spec.r), spec);
            const double e = max_error(g, hemi);
            worst_err = std::max(worst_err, e);
            o.require(e <= 1e-8, "hemisphere n=" + std::to_string(n) + " fd");
            auto in = hemisphere_instance(n, 1, 12, 0);
            slopes(match_coefficients(in.prob, in.datum), [](const Real& t) { return Real(sqrt(1 - t * t) - 1); }, 12,
                   "hemisphere n=" + std::to_string(n));
        }
        o.note << "max FD error " << worst_err << ", max slope deviation " << worst_slope;
    });

    report(8, "Friedman constants and bounds", [](Outcome& o) {
        auto k = friedman_constants(1, 1, 1, 1);
        o.require(k.B1 == 16 && k.B0_tilde == 200, "constants");
        auto cb = verify_coefficient_bound(20, k.B1);
        o.require(cb.holds, "coefficient bound");
        for (const auto& fam : composition_families()) {
            auto r = verify_composition_bound(fam, 12);
            o.require(r.hypotheses_hold, fam.name + " hypotheses");
            o.require(r.holds, fam.name + " composition");
        }
        o.note << "(16, 200), worst a_ik ratio " << cb.worst_ratio.get_d();
    });

    report(9, "hemisphere tangential radius", [](Outcome& o) {
        auto h = hemisphere_instance(3, 1, 4, 10);
        auto fit = tangential_growth_fit(match_coefficients(h.prob, h.datum));
        o.require(!fit.degenerate && fit.radius >= 0.8 && fit.radius <= 1.25, "radius out of range");
        o.note << "radius " << fit.radius;
    });

    return failures ? 1 : 0;
}
