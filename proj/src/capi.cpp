#include "phx/phx.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "friedman.hpp"
#include "run.hpp"
#include "series_json.hpp"

struct phx_series {
    phx::LogSeries s;
};

struct phx_problem {
    phx::ProblemInstance in;
};

namespace {

thread_local std::string g_error;

phx_status set_error(phx_status st, const std::string& msg)
{
    g_error = msg;
    return st;
}

template <class Fn>
phx_status guarded(Fn&& fn)
{
    try {
        g_error.clear();
        return fn();
    } catch (const phx::ConfigError& e) {
        return set_error(PHX_ERR_CONFIG, e.what());
    } catch (const phx::DomainError& e) {
        return set_error(PHX_ERR_DOMAIN, e.what());
    } catch (const phx::ValidationError& e) {
        return set_error(PHX_ERR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return set_error(PHX_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(PHX_ERR_INTERNAL, "unknown exception");
    }
}

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

phx_status null_arg(const char* what) { return set_error(PHX_ERR_ARGUMENT, std::string("null argument: ") + what); }

std::string read_file(const char* path)
{
    std::ifstream in(path);
    if (!in) throw phx::ConfigError(std::string("cannot read config file '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

extern "C" {

const char* phx_last_error(void) { return g_error.c_str(); }

const char* phx_version(void) { return "1.0.0"; }

void phx_string_free(char* s) { std::free(s); }

phx_status phx_problem_from_config(const char* text, phx_problem** out)
{
    if (!text || !out) return null_arg("text/out");
    return guarded([&] {
        const auto cfg = phx::parse_config(text);
        if (!cfg.has_problem) throw phx::ConfigError("config has no [problem] section");
        *out = new phx_problem{phx::build_instance(cfg.problem)};
        return PHX_OK;
    });
}

phx_status phx_problem_from_file(const char* path, phx_problem** out)
{
    if (!path || !out) return null_arg("path/out");
    return guarded([&] {
        const std::string text = read_file(path);
        return phx_problem_from_config(text.c_str(), out);
    });
}

void phx_problem_free(phx_problem* p) { delete p; }

phx_status phx_problem_roots(const phx_problem* p, int* m_low, int* m_high)
{
    if (!p || !m_low || !m_high) return null_arg("problem/m_low/m_high");
    *m_low = p->in.prob.nf.m_low;
    *m_high = p->in.prob.nf.m_high;
    return PHX_OK;
}

phx_status phx_match(const phx_problem* p, phx_series** out)
{
    if (!p || !out) return null_arg("problem/out");
    return guarded([&] {
        *out = new phx_series{phx::match_coefficients(p->in.prob, p->in.datum)};
        return PHX_OK;
    });
}

phx_status phx_iterate(const phx_problem* p, phx_series** out)
{
    if (!p || !out) return null_arg("problem/out");
    return guarded([&] {
        auto r = phx::run_iteration(p->in.prob, phx::seed_expansion(p->in.prob, p->in.datum));
        *out = new phx_series{std::move(r.v)};
        return PHX_OK;
    });
}

phx_status phx_oracle(const phx_problem* p, phx_series** out)
{
    if (!p || !out) return null_arg("problem/out");
    if (!p->in.oracle) return set_error(PHX_ERR_DOMAIN, "no exact expansion known for " + p->in.prob.name);
    *out = new phx_series{*p->in.oracle};
    return PHX_OK;
}

phx_status phx_residual_zero(const phx_problem* p, const phx_series* s, int* zero)
{
    if (!p || !s || !zero) return null_arg("problem/series/zero");
    return guarded([&] {
        *zero = phx::residual(p->in.prob, s->s).zero() ? 1 : 0;
        return PHX_OK;
    });
}

phx_status phx_series_to_json(const phx_series* s, char** json)
{
    if (!s || !json) return null_arg("series/json");
    return guarded([&] {
        *json = dup(phx::series_to_json(s->s));
        return PHX_OK;
    });
}

phx_status phx_series_from_json(const char* json, phx_series** out)
{
    if (!json || !out) return null_arg("json/out");
    return guarded([&] {
        *out = new phx_series{phx::series_from_json(json)};
        return PHX_OK;
    });
}

int phx_series_equal(const phx_series* a, const phx_series* b)
{
    if (!a || !b) return 0;
    return a->s == b->s ? 1 : 0;
}

phx_status phx_series_coeff(const phx_series* s, int i, int j, char** rational)
{
    if (!s || !rational) return null_arg("series/rational");
    return guarded([&] {
        *rational = dup(s->s.coeff(i, j).constant_term().get_str());
        return PHX_OK;
    });
}

void phx_series_free(phx_series* s) { delete s; }

phx_status phx_run(const char* config_text, const char* out_dir, const char* command, char** report)
{
    if (!config_text || !report) return null_arg("config/report");
    return guarded([&] {
        auto r = phx::run_text(config_text, out_dir ? out_dir : "", command ? command : "");
        *report = dup(r.report);
        if (r.code != PHX_OK) g_error = r.report;
        return static_cast<phx_status>(r.code);
    });
}

phx_status phx_run_file(const char* path, const char* out_dir, const char* command, char** report)
{
    if (!path || !report) return null_arg("path/report");
    return guarded([&] {
        auto r = phx::run_file(path, out_dir ? out_dir : "", command ? command : "");
        *report = dup(r.report);
        if (r.code != PHX_OK) g_error = r.report;
        return static_cast<phx_status>(r.code);
    });
}

phx_status phx_indicial_roots(long p, long q, int* m_low, int* m_high)
{
    if (!m_low || !m_high) return null_arg("m_low/m_high");
    return guarded([&] {
        std::tie(*m_low, *m_high) = phx::indicial_roots(p, q);
        return PHX_OK;
    });
}

phx_status phx_friedman_constants(const char* A0, const char* A1, const char* A2, const char* B0, char** B1,
                                  char** B0_tilde)
{
    if (!A0 || !A1 || !A2 || !B0 || !B1 || !B0_tilde) return null_arg("constants");
    return guarded([&] {
        const auto k = phx::friedman_constants(phx::parse_rational(A0), phx::parse_rational(A1),
                                               phx::parse_rational(A2), phx::parse_rational(B0));
        *B1 = dup(k.B1.get_str());
        *B0_tilde = dup(k.B0_tilde.get_str());
        return PHX_OK;
    });
}

phx_status phx_ln_local_coeffs(int n, const char* H, const char* K, const char* lap_H, char** c1, char** c31)
{
    if (!H || !K || !lap_H || !c1 || !c31) return null_arg("coefficients");
    return guarded([&] {
        const auto r = phx::ln_local_coeffs(n, phx::parse_rational(H), phx::parse_rational(K),
                                            phx::parse_rational(lap_H));
        *c1 = dup(r.c1.get_str());
        *c31 = r.c31 ? dup(r.c31->get_str()) : nullptr;
        return PHX_OK;
    });
}

}  // extern "C"
