#include "hl/report.hpp"

#include <sstream>

namespace hl {

Json provenance(const std::string& module, const Json& tolerances, const Json& truncation) {
    Json p;
    p["module"] = module;
    p["version"] = kVersion;
    p["tolerances"] = tolerances;
    p["truncation"] = truncation;
    return p;
}

Json to_json(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

Json to_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const AlgebraicLog& a) {
    Json f = Json::array();
    for (auto& [q, e] : a.factors()) f.push_back(Json{{"q", to_json(Rational(q))}, {"e", to_json(e)}});
    Json j;
    j["factors"] = f;
    j["log"] = a.value();
    j["rational"] = a.is_rational();
    if (a.is_rational()) j["value"] = to_json(a.to_rational());
    return j;
}

Json to_json(const KappaPair& k) {
    auto one = [](const Kappa& c) {
        return Json{{"a0", to_json(c.a0)},
                    {"A", c.A},
                    {"factor", to_json(c.factor)},
                    {"log_alpha", to_json(c.log_alpha)},
                    {"value", c.value()}};
    };
    return Json{{"inf", one(k.inf)}, {"zero", one(k.zero)}, {"limit_term", k.limit_term}, {"rhs", k.rhs(k.p)}};
}

Json to_json(const RegularizedPeriod& r) {
    Json ladder = Json::array();
    for (auto& [T, v] : r.ladder) ladder.push_back(Json{{"T", T}, {"value", v}});
    return Json{{"value", r.value},
                {"ladder", ladder},
                {"ladder_change", r.ladder_change},
                {"rho_value", r.rho_value},
                {"compact_inf", r.compact_inf},
                {"compact_zero", r.compact_zero},
                {"junction_mismatch", r.continuity},
                {"log_coefficient", r.log_coefficient},
                {"nodes", r.nodes}};
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

void flatten(const Json& j, const std::string& path, std::ostringstream& os) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
    } else {
        os << csv_escape(path) << "," << csv_escape(j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

}  // namespace

std::string to_csv(const Json& j) {
    std::ostringstream os;
    os << "key,value\n";
    flatten(j, "", os);
    return os.str();
}

std::string render(const Json& j, Format f) { return f == Format::Json ? j.dump(2) + "\n" : to_csv(j); }

}  // namespace hl
