#include "config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace phx {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kKeys = {
    {"", {"version", "command"}},
    {"problem",
     {"kind", "n", "K", "tangential_degree", "radius", "phi", "datum", "m_low", "m_high", "dim", "forcing0", "planted",
      "quadratic"}},
    {"output", {"dir", "series", "trace", "grid", "slopes"}},
    {"majorant", {"s0", "a0", "theta", "lattice", "burn_in", "pass_ratio"}},
    {"validate",
     {"t_min", "r", "points", "tol", "max_newton", "max_halvings", "richardson", "fd_tol", "slope_tol",
      "growth_degree"}},
    {"curvature", {"n", "kappa", "lap_H"}},
    {"friedman", {"A0", "A1", "A2", "B0", "coefficient_p", "composition_p"}},
};

const std::set<std::string> kCommands = {"expand", "match", "iterate", "validate", "ln-coeffs", "friedman"};
const std::set<std::string> kKinds = {"minimal_graph", "hemisphere", "ln_halfspace", "ln_ball", "homogeneous", "synthetic"};

class Section {
public:
    Section(const pt::ptree* t, std::string name) : t_(t), name_(std::move(name)) {}

    bool has(const std::string& k) const { return t_ && t_->find(k) != t_->not_found(); }

    std::string str(const std::string& k, const std::string& def) const
    {
        return has(k) ? boost::trim_copy(t_->get<std::string>(k)) : def;
    }

    int integer(const std::string& k, int def) const
    {
        if (!has(k)) return def;
        const std::string s = str(k, "");
        try {
            std::size_t pos = 0;
            const int v = std::stoi(s, &pos);
            if (pos == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(where(k) + ": expected an integer, got '" + s + "'");
    }

    double real(const std::string& k, double def) const
    {
        if (!has(k)) return def;
        const std::string s = str(k, "");
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw ConfigError(where(k) + ": expected a number, got '" + s + "'");
    }

    double positive(const std::string& k, double def) const
    {
        const double v = real(k, def);
        if (!(v > 0)) throw ConfigError(where(k) + " must be positive");
        return v;
    }

    Q rational(const std::string& k, const Q& def) const
    {
        if (!has(k)) return def;
        try {
            return parse_rational(str(k, ""));
        } catch (const ConfigError& e) {
            throw ConfigError(where(k) + ": " + e.what());
        }
    }

    bool boolean(const std::string& k, bool def) const
    {
        if (!has(k)) return def;
        const std::string s = str(k, "");
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        throw ConfigError(where(k) + ": expected true or false");
    }

    std::string where(const std::string& k) const { return name_.empty() ? k : name_ + "." + k; }

private:
    const pt::ptree* t_;
    std::string name_;
};

void check_keys(const pt::ptree& root)
{
    for (const auto& [name, node] : root) {
        if (node.empty()) {
            if (!kKeys.at("").count(name)) throw ConfigError("unknown top-level key '" + name + "'");
            continue;
        }
        auto it = kKeys.find(name);
        if (name.empty() || it == kKeys.end()) throw ConfigError("unknown section [" + name + "]");
        for (const auto& kv : node)
            if (!it->second.count(kv.first)) throw ConfigError("unknown key '" + kv.first + "' in [" + name + "]");
    }
}

Section section(const pt::ptree& root, const std::string& name)
{
    auto it = root.find(name);
    return Section(it == root.not_found() ? nullptr : &it->second, name);
}

}  // namespace

Q parse_rational(const std::string& in)
{
    const std::string s = boost::trim_copy(in);
    if (s.empty()) throw ConfigError("empty rational");
    std::string body = s[0] == '+' || s[0] == '-' ? s.substr(1) : s;
    const auto slash = body.find('/');
    auto digits = [](const std::string& d) {
        return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(body.substr(0, slash)) || (slash != std::string::npos && !digits(body.substr(slash + 1))))
        throw ConfigError("malformed rational '" + s + "'");
    Q q;
    q.set_str(s[0] == '+' ? body : s, 10);
    if (q.get_den() == 0) throw ConfigError("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

TangentialPoly parse_poly(const std::string& s, int dim, int max_degree)
{
    TangentialPoly p(dim, max_degree);
    std::vector<std::string> terms;
    boost::split(terms, s, boost::is_any_of(";"));
    for (auto& term : terms) {
        boost::trim(term);
        if (term.empty()) continue;
        std::vector<int> e(dim, 0);
        std::string coef = term;
        const auto colon = term.find(':');
        if (colon != std::string::npos) {
            coef = term.substr(colon + 1);
            std::string ex = boost::trim_copy(term.substr(0, colon));
            std::vector<std::string> parts;
            if (!ex.empty()) boost::split(parts, ex, boost::is_any_of(","));
            if (static_cast<int>(parts.size()) != dim)
                throw ConfigError("term '" + term + "' needs " + std::to_string(dim) + " exponents");
            for (int k = 0; k < dim; ++k) {
                try {
                    std::size_t pos = 0;
                    const std::string x = boost::trim_copy(parts[k]);
                    e[k] = std::stoi(x, &pos);
                    if (pos != x.size() || e[k] < 0) throw ConfigError("");
                } catch (const std::exception&) {
                    throw ConfigError("bad exponent in term '" + term + "'");
                }
            }
        }
        p.add_term(make_mono(e), parse_rational(coef));
    }
    return p;
}

RunConfig parse_config(const std::string& text, const std::string& command)
{
    pt::ptree root;
    try {
        std::istringstream in(text);
        pt::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    check_keys(root);

    RunConfig c;
    Section top(&root, "");
    if (!top.has("version")) throw ConfigError("missing mandatory key 'version'");
    c.version = top.integer("version", 0);
    if (c.version != 1) throw ConfigError("unsupported config version " + std::to_string(c.version));
    c.command = command.empty() ? top.str("command", "") : command;
    if (!kCommands.count(c.command)) throw ConfigError("unknown or missing command '" + c.command + "'");

    auto P = section(root, "problem");
    c.has_problem = root.find("problem") != root.not_found();
    auto& p = c.problem;
    p.kind = P.str("kind", "");
    if (c.has_problem && !kKinds.count(p.kind)) throw ConfigError("unknown problem kind '" + p.kind + "'");
    p.n = P.integer("n", p.n);
    p.K = P.integer("K", p.K);
    p.tangential_degree = P.integer("tangential_degree", p.tangential_degree);
    p.radius = P.rational("radius", p.radius);
    p.phi = P.str("phi", "");
    p.datum = P.str("datum", "");
    p.m_low = P.integer("m_low", p.m_low);
    p.m_high = P.integer("m_high", p.m_high);
    p.dim = P.integer("dim", p.dim);
    p.forcing0 = P.rational("forcing0", p.forcing0);
    p.planted = P.rational("planted", p.planted);
    p.quadratic = P.rational("quadratic", p.quadratic);
    if (p.K < 1) throw ConfigError("problem.K must be positive");
    if (p.tangential_degree < 0) throw ConfigError("problem.tangential_degree must be nonnegative");
    if (p.radius <= 0) throw ConfigError("problem.radius must be positive");

    auto O = section(root, "output");
    c.output.dir = O.str("dir", c.output.dir);
    c.output.series = O.str("series", c.output.series);
    c.output.trace = O.str("trace", c.output.trace);
    c.output.grid = O.str("grid", c.output.grid);
    c.output.slopes = O.str("slopes", c.output.slopes);

    auto M = section(root, "majorant");
    auto& m = c.majorant;
    m.s0 = M.positive("s0", m.s0);
    m.a0 = M.positive("a0", m.a0);
    m.theta = M.real("theta", m.theta);
    m.lattice = M.integer("lattice", m.lattice);
    m.burn_in = M.integer("burn_in", m.burn_in);
    m.pass_ratio = M.positive("pass_ratio", m.pass_ratio);
    if (m.theta < 0 || m.theta >= 1) throw ConfigError("majorant.theta must lie in [0, 1)");
    if (m.lattice < 2) throw ConfigError("majorant.lattice must be at least 2");
    if (m.burn_in < 0) throw ConfigError("majorant.burn_in must be nonnegative");

    auto V = section(root, "validate");
    auto& v = c.validate;
    v.grid.t_min = V.positive("t_min", v.grid.t_min);
    v.grid.r = V.positive("r", v.grid.r);
    v.grid.points = V.integer("points", v.grid.points);
    v.grid.tol = V.positive("tol", v.grid.tol);
    v.grid.max_newton = V.integer("max_newton", v.grid.max_newton);
    v.grid.max_halvings = V.integer("max_halvings", v.grid.max_halvings);
    v.richardson = V.boolean("richardson", v.richardson);
    v.fd_tol = V.positive("fd_tol", v.fd_tol);
    v.slope_tol = V.positive("slope_tol", v.slope_tol);
    v.growth_degree = V.integer("growth_degree", v.growth_degree);
    if (v.grid.points < 3) throw ConfigError("validate.points must be at least 3");
    if (v.grid.max_newton < 1) throw ConfigError("validate.max_newton must be positive");

    auto C = section(root, "curvature");
    c.curvature.n = C.integer("n", c.curvature.n);
    if (C.has("kappa")) {
        std::vector<std::string> parts;
        boost::split(parts, C.str("kappa", ""), boost::is_any_of(","));
        for (const auto& s : parts) c.curvature.kappa.push_back(parse_rational(s));
    }
    c.curvature.lap_H = C.rational("lap_H", c.curvature.lap_H);

    auto F = section(root, "friedman");
    auto& f = c.friedman;
    f.A0 = F.rational("A0", f.A0);
    f.A1 = F.rational("A1", f.A1);
    f.A2 = F.rational("A2", f.A2);
    f.B0 = F.rational("B0", f.B0);
    f.coefficient_p = F.integer("coefficient_p", f.coefficient_p);
    f.composition_p = F.integer("composition_p", f.composition_p);
    if (f.coefficient_p < 2 || f.composition_p < 1) throw ConfigError("friedman orders out of range");

    const bool needs_problem = c.command == "expand" || c.command == "match" || c.command == "iterate" ||
                               c.command == "validate";
    if (needs_problem && !c.has_problem) throw ConfigError("command '" + c.command + "' needs a [problem] section");
    if (c.command == "ln-coeffs" && c.curvature.kappa.empty())
        throw ConfigError("ln-coeffs needs curvature.kappa");
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

ProblemInstance build_instance(const ProblemSpec& s)
{
    const int W = s.K + s.tangential_degree;
    if (s.kind == "hemisphere") return hemisphere_instance(s.n, s.radius, s.K, s.tangential_degree);
    if (s.kind == "ln_ball") {
        if (s.tangential_degree != 0) throw ConfigError("ln_ball is radial: tangential_degree must be 0");
        return ln_ball_instance(s.n, s.K);
    }
    if (s.n < 2 || s.n > kMaxDim + 1) throw DomainError("dimension n out of range");
    if (s.kind == "minimal_graph") {
        ProblemInstance in;
        in.K = s.K;
        in.prob = minimal_graph_problem(s.n, parse_poly(s.phi, s.n - 1, W), W);
        in.datum = parse_poly(s.datum, s.n - 1, W - (s.n + 1));
        return in;
    }
    if (s.kind == "ln_halfspace")
        return ln_halfspace_instance(s.n, s.K, s.tangential_degree,
                                     parse_poly(s.datum.empty() ? "0" : s.datum, s.n - 1, W));
    if (s.kind == "homogeneous") {
        ProblemInstance in;
        in.K = s.K;
        in.prob = homogeneous_problem(s.m_low, s.m_high, s.dim, W);
        in.datum = parse_poly(s.datum.empty() ? "1" : s.datum, s.dim, W - s.m_high);
        LogSeries exact(s.dim, W);
        exact.add(s.m_high, 0, in.datum);
        in.oracle = exact;
        return in;
    }
    if (s.kind == "synthetic") {
        if (s.dim != 0 || s.tangential_degree != 0) throw ConfigError("synthetic problems are radial");
        ProblemInstance in;
        in.K = s.K;
        in.prob = synthetic_problem(s.m_low, s.m_high, W, s.forcing0, s.planted, s.quadratic);
        in.datum = parse_poly(s.datum.empty() ? "0" : s.datum, 0, W - s.m_high);
        return in;
    }
    throw ConfigError("unknown problem kind '" + s.kind + "'");
}

}  // namespace phx
