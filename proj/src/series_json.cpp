#include "series_json.hpp"

#include <json.hpp>

namespace phx {

using nlohmann::json;

namespace {

json int_json(const mpz_class& z)
{
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
}

mpz_class int_from(const json& v)
{
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        mpz_class z;
        if (z.set_str(v.get<std::string>(), 10) != 0) throw ConfigError("series json: bad integer string");
        return z;
    }
    throw ConfigError("series json: expected integer");
}

}  // namespace

std::string series_to_json(const LogSeries& s, int indent)
{
    json doc;
    doc["dim"] = s.dim();
    doc["order"] = s.order() >= kExact ? json(nullptr) : json(s.order());
    json terms = json::array();
    for (const auto& [k, p] : s.coeffs()) {
        json poly = json::array();
        for (const auto& [m, c] : p.terms())
            poly.push_back({{"exps", mono_exps(m, s.dim())}, {"num", int_json(c.get_num())}, {"den", int_json(c.get_den())}});
        terms.push_back({{"i", k.first}, {"j", k.second}, {"poly", poly}});
    }
    doc["terms"] = terms;
    return doc.dump(indent) + "\n";
}

LogSeries series_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("series json: ") + e.what());
    }
    try {
        const int dim = doc.at("dim").get<int>();
        const int order = doc.at("order").is_null() ? kExact : doc.at("order").get<int>();
        LogSeries s(dim, order);
        for (const auto& rec : doc.at("terms")) {
            const int i = rec.at("i").get<int>(), j = rec.at("j").get<int>();
            TangentialPoly p(dim, s.cap(i));
            for (const auto& t : rec.at("poly")) {
                const auto e = t.at("exps").get<std::vector<int>>();
                if (static_cast<int>(e.size()) != dim) throw ConfigError("series json: exponent length mismatch");
                const mpz_class den = int_from(t.at("den"));
                if (den == 0) throw ConfigError("series json: zero denominator");
                Q c(int_from(t.at("num")), den);
                c.canonicalize();
                p.add_term(make_mono(e), c);
            }
            s.add(i, j, p);
        }
        return s;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("series json: ") + e.what());
    }
}

}  // namespace phx
