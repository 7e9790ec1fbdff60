#include "run.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "friedman.hpp"
#include "series_json.hpp"

namespace phx {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x)
{
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

class Runner {
public:
    explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

    void line(const std::string& key, const std::string& value) { out_ << key << ": " << value << '\n'; }

    void write(const std::string& name, const std::string& text)
    {
        const fs::path dir(cfg_.output.dir);
        fs::create_directories(dir);
        const fs::path p = dir / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + p.string() + "'");
        f << text;
        if (!f) throw ConfigError("write failed for '" + p.string() + "'");
        res_.artifacts.push_back(p.string());
        line("wrote", name);
    }

    void check(const std::string& what, bool ok)
    {
        line(what, verdict(ok));
        if (!ok) failed_ = true;
    }

    RunResult finish()
    {
        if (failed_) res_.code = kExitValidation;
        res_.report = out_.str();
        return res_;
    }

    void header(const ProblemInstance& in)
    {
        line("command", cfg_.command);
        line("problem", in.prob.name);
        line("roots", std::to_string(in.prob.nf.m_low) + " " + std::to_string(in.prob.nf.m_high));
        line("K", std::to_string(in.K));
        line("weight", std::to_string(in.prob.weight));
    }

    // Checks shared by every produced series.
    void series_checks(const ProblemInstance& in, const LogSeries& v)
    {
        const int mh = in.prob.nf.m_high;
        line("terms", std::to_string(v.coeffs().size()));
        line("max_log", std::to_string(v.max_log()));
        line("c_mhigh_1", v.coeff(mh, 1).zero() ? "zero" : "nonzero");
        check("residual", residual(in.prob, v).zero());
        if (in.prob.log_cap_n > 0) check("log_caps", log_caps_hold(v, in.prob.log_cap_n));
        if (in.oracle) check("oracle", v.same_terms(*in.oracle));
    }

    void match()
    {
        const auto in = build_instance(cfg_.problem);
        header(in);
        const auto v = match_coefficients(in.prob, in.datum);
        series_checks(in, v);
        write(cfg_.output.series, series_to_json(v));
    }

    void iterate(bool cross_check)
    {
        const auto in = build_instance(cfg_.problem);
        header(in);
        const auto it = run_iteration(in.prob, seed_expansion(in.prob, in.datum));
        series_checks(in, it.v);
        line("steps", std::to_string(it.trace.steps.size()));
        line("evaluations", std::to_string(it.trace.evaluations));
        const auto rep = majorant_report(it.trace, cfg_.majorant);
        line("ratio", fmt(rep.ratio));
        line("A", fmt(rep.A));
        check("decay", rep.pass);
        if (cross_check) check("match_equals_iterate", match_coefficients(in.prob, in.datum) == it.v);
        write(cfg_.output.series, series_to_json(it.v));
        write(cfg_.output.trace, rep.csv());
    }

    void validate()
    {
        const auto& ps = cfg_.problem;
        if (ps.kind != "hemisphere" && ps.kind != "ln_ball")
            throw ConfigError("validate supports the hemisphere and ln_ball problems");
        const auto in = build_instance(ps);
        header(in);
        const auto& spec = cfg_.validate.grid;
        const bool hemi = ps.kind == "hemisphere";
        const int n = ps.n;
        const double R = ps.radius.get_d();
        const Real Rr = to_real(ps.radius);

        std::function<double(double)> exact;
        std::function<Real(const Real&)> exact_hp;
        RadialODE ode;
        if (hemi) {
            if (spec.r >= R) throw ConfigError("validate.r must be below the radius");
            exact = [R](double t) { return std::sqrt(R * R - t * t) - R; };
            exact_hp = [Rr](const Real& t) { return Real(sqrt(Rr * Rr - t * t) - Rr); };
            ode = hemisphere_slice_ode(n, R);
        } else {
            if (spec.r >= 2) throw ConfigError("validate.r must be below 2");
            exact = [n](double t) { return std::pow(1 - t / 2, -(n - 2) / 2.0) - 1; };
            exact_hp = [n](const Real& t) { return Real(pow(1 - t / 2, Real(-(n - 2)) / 2) - 1); };
            ode = ln_ball_ode(n);
        }
        const auto g = cfg_.validate.richardson ? fd_solve_richardson(ode, exact(spec.t_min), exact(spec.r), spec)
                                                : fd_solve_radial(ode, exact(spec.t_min), exact(spec.r), spec);
        const double err = max_error(g, exact);
        line("grid_points", std::to_string(g.t.size()));
        line("newton_steps", std::to_string(g.log.size()));
        line("fd_error", fmt(err));
        check("fd", err <= cfg_.validate.fd_tol);
        write(cfg_.output.grid, grid_csv(g, exact));

        const auto series = match_coefficients(in.prob, in.datum);
        std::vector<int> ks;
        for (int k = 1; k <= in.K - 2; ++k) ks.push_back(k);
        auto rows = remainder_slopes(sample_function(exact_hp, spec.t_min), series, ks, spec.t_min, 1e-40);
        bool slopes_ok = true;
        for (auto& r : rows) {
            r.ok = !r.saturated && std::abs(r.slope - r.expected) <= cfg_.validate.slope_tol;
            slopes_ok = slopes_ok && r.ok;
        }
        check("slopes", slopes_ok);
        write(cfg_.output.slopes, slopes_csv(rows));

        const auto margin = negativity_margin(hemi ? minimal_graph_form(n, R) : ln_ball_form(n));
        line("margin_c0", fmt(margin.c0));
        check("margin", margin.c0 > 0);

        if (hemi && cfg_.validate.growth_degree > 0) {
            const auto h = hemisphere_instance(n, ps.radius, 4, cfg_.validate.growth_degree);
            const auto fit = tangential_growth_fit(match_coefficients(h.prob, h.datum));
            line("growth_radius", fmt(fit.radius));
            check("growth", !fit.degenerate && fit.radius >= 0.8 * R && fit.radius <= 1.25 * R);
        }
    }

    void ln_coeffs()
    {
        const auto& c = cfg_.curvature;
        if (static_cast<int>(c.kappa.size()) != c.n - 1)
            throw ConfigError("curvature.kappa needs n - 1 = " + std::to_string(c.n - 1) + " entries");
        Q H = 0, K = 0;
        for (std::size_t a = 0; a < c.kappa.size(); ++a) {
            H += c.kappa[a];
            for (std::size_t b = a + 1; b < c.kappa.size(); ++b) K += c.kappa[a] * c.kappa[b];
        }
        const Q m = c.n - 1;
        line("command", cfg_.command);
        line("n", std::to_string(c.n));
        line("H_sum", H.get_str());
        line("H_mean", Q(H / m).get_str());
        line("K", K.get_str());
        auto show = [&](const std::string& tag, const LNLocalCoeffs& r) {
            line(tag + ".c1", r.c1.get_str());
            line(tag + ".c31", r.c31 ? r.c31->get_str() : std::string("n/a"));
        };
        show("sum", ln_local_coeffs(c.n, H, K, c.lap_H));
        show("mean", ln_local_coeffs(c.n, H / m, K, c.lap_H / m));
        const auto audit = ln_convention_audit(c.n);
        line("unit_sphere.exact_c1", audit.exact_c1.get_str());
        line("unit_sphere.exact_c31", audit.exact_c31.get_str());
        line("unit_sphere.sum_c1_matches", audit.sum.c1 == audit.exact_c1 ? "yes" : "no");
        line("unit_sphere.mean_c1_matches", audit.mean.c1 == audit.exact_c1 ? "yes" : "no");
    }

    void friedman()
    {
        const auto& f = cfg_.friedman;
        line("command", cfg_.command);
        const auto k = friedman_constants(f.A0, f.A1, f.A2, f.B0);
        line("B1", k.B1.get_str());
        line("B0_tilde", k.B0_tilde.get_str());
        const auto cb = verify_coefficient_bound(f.coefficient_p, k.B1);
        line("coefficient_p", std::to_string(f.coefficient_p));
        line("worst", "i=" + std::to_string(cb.worst_i) + " k=" + std::to_string(cb.worst_k) +
                          " ratio=" + cb.worst_ratio.get_str());
        check("coefficient_bound", cb.holds);
        for (const auto& fam : composition_families()) {
            const auto r = verify_composition_bound(fam, f.composition_p);
            line(fam.name + ".constants", r.constants.B1.get_str() + " " + r.constants.B0_tilde.get_str());
            if (!r.hypotheses_hold) line(fam.name + ".hypotheses", r.hypothesis_note);
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& row : r.rows) worst = std::min(worst, row.margin);
            line(fam.name + ".min_margin", fmt(worst));
            check(fam.name, r.holds);
        }
    }

private:
    const RunConfig& cfg_;
    std::ostringstream out_;
    RunResult res_;
    bool failed_ = false;
};

RunResult fail(int code, const std::string& what)
{
    RunResult r;
    r.code = code;
    r.report = "error: " + what + "\n";
    return r;
}

}  // namespace

RunResult run(const RunConfig& cfg)
{
    try {
        Runner r(cfg);
        const auto& c = cfg.command;
        if (c == "match")
            r.match();
        else if (c == "iterate")
            r.iterate(false);
        else if (c == "expand")
            r.iterate(true);
        else if (c == "validate")
            r.validate();
        else if (c == "ln-coeffs")
            r.ln_coeffs();
        else if (c == "friedman")
            r.friedman();
        else
            throw ConfigError("unknown command '" + c + "'");
        return r.finish();
    } catch (const ConfigError& e) {
        return fail(kExitConfig, e.what());
    } catch (const DomainError& e) {
        return fail(kExitDomain, e.what());
    } catch (const ValidationError& e) {
        return fail(kExitValidation, e.what());
    } catch (const std::exception& e) {
        return fail(kExitInternal, e.what());
    }
}

RunResult run_text(const std::string& text, const std::string& out_dir, const std::string& command)
{
    RunConfig cfg;
    try {
        cfg = parse_config(text, command);
    } catch (const ConfigError& e) {
        return fail(kExitConfig, e.what());
    } catch (const DomainError& e) {
        return fail(kExitDomain, e.what());
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    return run(cfg);
}

RunResult run_file(const std::string& path, const std::string& out_dir, const std::string& command)
{
    std::ifstream in(path);
    if (!in) return fail(kExitConfig, "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_text(ss.str(), out_dir, command);
}

}  // namespace phx
