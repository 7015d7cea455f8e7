#include "hl/field_data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hl {

using nlohmann::json;

std::string real_str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string rat_str(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q) << "/" << boost::multiprecision::denominator(q);
    return os.str();
}

Rational rat_parse(const std::string& s) {
    auto sl = s.find('/');
    if (sl == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, sl))) / Rational(BigInt(s.substr(sl + 1)));
}

json mat_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(real_str(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

Eigen::MatrixXd mat_parse(const json& j) {
    int r = (int)j.size();
    int c = r ? (int)j.at(0).size() : 0;
    Eigen::MatrixXd m(r, c);
    for (int i = 0; i < r; ++i) {
        if ((int)j.at(i).size() != c) throw std::invalid_argument("ragged matrix");
        for (int k = 0; k < c; ++k) m(i, k) = std::stod(j.at(i).at(k).get<std::string>());
    }
    return m;
}

json ideal_json(const FractionalIdeal& I) {
    return json{{"scale", rat_str(Rational(I.num) / Rational(I.den))},
                {"A", std::to_string(I.A)},
                {"B", std::to_string(I.B)}};
}

FractionalIdeal ideal_parse(const json& j) {
    Rational sc = rat_parse(j.at("scale").get<std::string>());
    FractionalIdeal I;
    I.num = static_cast<long long>(boost::multiprecision::numerator(sc));
    I.den = static_cast<long long>(boost::multiprecision::denominator(sc));
    I.A = std::stoll(j.at("A").get<std::string>());
    I.B = std::stoll(j.at("B").get<std::string>());
    return I;
}

Eigen::MatrixXd embed_basis(const Field& F, const FractionalIdeal& I) {
    auto [a, b] = F.basis(I);
    Eigen::MatrixXd m(2, 2);
    for (int k = 0; k < 2; ++k) {
        m(k, 0) = F.embed(a, k);
        m(k, 1) = F.embed(b, k);
    }
    return m;
}

bool near_integer_matrix(const Eigen::MatrixXd& m, double tol) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (std::fabs(m(i, j) - std::round(m(i, j))) > tol * std::max(1.0, std::fabs(m(i, j)))) return false;
    return true;
}

}  // namespace

double TorusData::eps_log() const {
    if (unit_log_lattice.size() == 0) throw std::logic_error("missing unit lattice");
    return std::fabs(unit_log_lattice(0, 0));
}

TorusData export_n2(const Field& F, const NarrowClassGroup& G, const NarrowCharacter& chi,
                    const FractionalIdeal& c, long long p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (!c.is_integral() || !F.divides(c, F.principal(QElem{Rational(p), 0})))
        throw std::invalid_argument("c does not divide (p)");
    if (!chi.is_totally_odd) throw std::invalid_argument("character is not totally odd");
    TorusData td;
    td.N = 2;
    td.disc = F.D;
    td.p = p;
    td.width_inf = 1;
    td.width_zero = p;
    td.g_eps.resize(2, 2);
    QElem w{0, 1}, one{1, 0};
    for (int k = 0; k < 2; ++k) {
        td.g_eps(k, 0) = F.embed(w, k);
        td.g_eps(k, 1) = F.embed(one, k);
    }
    td.class_count = G.order;
    td.char_values = chi.values;
    td.class_table = G.table;
    td.unit_log_lattice.resize(2, 1);
    td.unit_log_lattice(0, 0) = std::log(F.embed(F.eps_plus, 0));
    td.unit_log_lattice(1, 0) = std::log(F.embed(F.eps_plus, 1));
    td.norm_c = c.norm();
    td.norm_d = F.different.norm();
    td.chi_c = chi(G.class_of(F, c));
    td.chi_d = chi(G.class_of(F, F.different));
    ExactN2 ex;
    ex.disc = F.D;
    ex.c = c;
    FractionalIdeal dinv = F.inverse(F.different);
    for (int i = 0; i < G.order; ++i) {
        const FractionalIdeal& a = G.representatives[i];
        ex.class_reps.push_back(a);
        LatticePair lp;
        lp.class_index = i;
        lp.chi = chi(i);
        lp.norm_a = a.norm();
        lp.lattice_a = embed_basis(F, a);
        lp.lattice_ac = embed_basis(F, F.mul(a, c));
        lp.lattice_dual = embed_basis(F, F.mul(F.inverse(a), dinv));
        td.pairs.push_back(lp);
    }
    td.exact = ex;
    return td;
}

std::vector<Violation> validate(const TorusData& td) {
    std::vector<Violation> out;
    const double tol = 1e-9;
    int N = td.N;
    if (N <= 0 || N % 2 != 0) out.push_back({"PARITY", "degree must be even and positive"});
    if (td.g_eps.rows() != N || td.g_eps.cols() != N) {
        out.push_back({"SHAPE", "g_eps is not N x N"});
        return out;
    }
    if (td.g_eps.determinant() <= 0) out.push_back({"ORIENTATION", "det(g_eps) <= 0"});
    if ((int)td.pairs.size() != td.class_count || (int)td.char_values.size() != td.class_count)
        out.push_back({"SHAPE", "class count mismatch"});
    for (int v : td.char_values)
        if (v != 1 && v != -1) out.push_back({"CHARACTER", "character value not +-1"});
    if (std::abs(td.chi_c) != 1 || std::abs(td.chi_d) != 1) out.push_back({"CHARACTER", "chi(c) or chi(d) not +-1"});
    if (!td.class_table.empty()) {
        bool ok = (int)td.class_table.size() == td.class_count;
        for (int i = 0; ok && i < td.class_count; ++i)
            for (int j = 0; ok && j < td.class_count; ++j) {
                int k = td.class_table[i][j];
                if (k < 0 || k >= td.class_count || td.char_values[k] != td.char_values[i] * td.char_values[j]) ok = false;
            }
        if (!ok) out.push_back({"CHARACTER", "character values are not a homomorphism"});
    }
    if (td.unit_log_lattice.rows() != N || td.unit_log_lattice.cols() != N - 1)
        out.push_back({"SHAPE", "unit log lattice is not N x (N-1)"});
    else
        for (int j = 0; j < N - 1; ++j)
            if (std::fabs(td.unit_log_lattice.col(j).sum()) > tol) out.push_back({"UNITS", "unit log vector has nonzero sum"});
    double sd = std::sqrt((double)td.disc);
    double nc = static_cast<double>(td.norm_c);
    for (std::size_t i = 0; i < td.pairs.size(); ++i) {
        const auto& lp = td.pairs[i];
        std::string tag = "class " + std::to_string(i);
        if (lp.lattice_a.rows() != N || lp.lattice_a.cols() != N || lp.lattice_ac.rows() != N ||
            lp.lattice_ac.cols() != N || lp.lattice_dual.rows() != N || lp.lattice_dual.cols() != N) {
            out.push_back({"SHAPE", tag + ": lattice basis is not N x N"});
            continue;
        }
        if (i < td.char_values.size() && lp.chi != td.char_values[i]) out.push_back({"CHARACTER", tag + ": chi mismatch"});
        double na = static_cast<double>(lp.norm_a);
        double det_a = std::fabs(lp.lattice_a.determinant());
        if (std::fabs(det_a - na * sd) > tol * std::max(1.0, na * sd)) out.push_back({"COVOLUME", tag + ": |det sigma(a)| != N(a) sqrt(D)"});
        Eigen::MatrixXd M = lp.lattice_a.transpose() * lp.lattice_dual;
        if (!near_integer_matrix(M, tol) || std::fabs(std::fabs(M.determinant()) - 1.0) > tol)
            out.push_back({"DUALITY", tag + ": sigma(a^-1 d^-1) is not the trace dual of sigma(a)"});
        Eigen::MatrixXd S = lp.lattice_a.inverse() * lp.lattice_ac;
        if (!near_integer_matrix(S, tol) || std::fabs(std::fabs(S.determinant()) - nc) > tol * std::max(1.0, nc))
            out.push_back({"SUBLATTICE", tag + ": sigma(ac) is not an index N(c) sublattice of sigma(a)"});
    }
    return out;
}

std::string to_json(const TorusData& td) {
    json j;
    j["schema"] = "torusdata-v1";
    j["real_digits"] = 17;
    j["N"] = td.N;
    j["disc"] = std::to_string(td.disc);
    j["prime"] = std::to_string(td.p);
    j["widths"] = {{"inf", std::to_string(td.width_inf)}, {"zero", std::to_string(td.width_zero)}};
    j["g_eps"] = mat_json(td.g_eps);
    j["class_count"] = td.class_count;
    j["char_values"] = td.char_values;
    j["class_table"] = td.class_table;
    j["unit_log_lattice"] = mat_json(td.unit_log_lattice);
    j["norms"] = {{"c", rat_str(td.norm_c)}, {"d", rat_str(td.norm_d)}};
    j["chi_c"] = td.chi_c;
    j["chi_d"] = td.chi_d;
    json pairs = json::array();
    for (auto& lp : td.pairs) {
        pairs.push_back({{"class_index", lp.class_index},
                         {"chi", lp.chi},
                         {"norm_a", rat_str(lp.norm_a)},
                         {"lattice_a", mat_json(lp.lattice_a)},
                         {"lattice_ac", mat_json(lp.lattice_ac)},
                         {"lattice_dual", mat_json(lp.lattice_dual)}});
    }
    j["lattice_pairs"] = pairs;
    if (td.exact) {
        json reps = json::array();
        for (auto& r : td.exact->class_reps) reps.push_back(ideal_json(r));
        j["exact"] = {{"disc", std::to_string(td.exact->disc)}, {"ideal_c", ideal_json(td.exact->c)}, {"class_reps", reps}};
    }
    return j.dump(2);
}

TorusData from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.value("schema", "") != "torusdata-v1") throw std::invalid_argument("unknown schema");
    TorusData td;
    td.N = j.at("N").get<int>();
    td.disc = std::stoll(j.at("disc").get<std::string>());
    td.p = std::stoll(j.at("prime").get<std::string>());
    td.width_inf = std::stoll(j.at("widths").at("inf").get<std::string>());
    td.width_zero = std::stoll(j.at("widths").at("zero").get<std::string>());
    td.g_eps = mat_parse(j.at("g_eps"));
    td.class_count = j.at("class_count").get<int>();
    td.char_values = j.at("char_values").get<std::vector<int>>();
    if (j.contains("class_table")) td.class_table = j.at("class_table").get<std::vector<std::vector<int>>>();
    td.unit_log_lattice = mat_parse(j.at("unit_log_lattice"));
    td.norm_c = rat_parse(j.at("norms").at("c").get<std::string>());
    td.norm_d = rat_parse(j.at("norms").at("d").get<std::string>());
    td.chi_c = j.at("chi_c").get<int>();
    td.chi_d = j.at("chi_d").get<int>();
    for (auto& jp : j.at("lattice_pairs")) {
        LatticePair lp;
        lp.class_index = jp.at("class_index").get<int>();
        lp.chi = jp.at("chi").get<int>();
        lp.norm_a = rat_parse(jp.at("norm_a").get<std::string>());
        lp.lattice_a = mat_parse(jp.at("lattice_a"));
        lp.lattice_ac = mat_parse(jp.at("lattice_ac"));
        lp.lattice_dual = mat_parse(jp.at("lattice_dual"));
        td.pairs.push_back(lp);
    }
    if (j.contains("exact")) {
        ExactN2 ex;
        ex.disc = std::stoll(j["exact"].at("disc").get<std::string>());
        ex.c = ideal_parse(j["exact"].at("ideal_c"));
        for (auto& r : j["exact"].at("class_reps")) ex.class_reps.push_back(ideal_parse(r));
        td.exact = ex;
    }
    return td;
}

void save(const TorusData& td, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::invalid_argument("cannot write " + path);
    f << to_json(td) << "\n";
}

TorusData load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

FieldContext field_context(const TorusData& td) {
    if (td.N != 2 || !td.exact) throw std::invalid_argument("exact N = 2 field data required");
    Field F(td.exact->disc);
    NarrowClassGroup G = narrow_class_group(F);
    if (G.order != td.class_count) throw std::invalid_argument("class count does not match the field");
    NarrowCharacter chi;
    chi.values.assign(G.order, 0);
    for (std::size_t i = 0; i < td.exact->class_reps.size(); ++i)
        chi.values[G.class_of(F, td.exact->class_reps[i])] = td.char_values.at(i);
    chi.is_totally_odd = chi(G.class_of(F, F.different)) == -1;
    return FieldContext{F, G, chi, td.exact->c, td.p};
}

}  // namespace hl
