#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>

#include "checks.hpp"
#include "hl/errors.hpp"
#include "hl/lfunc.hpp"
#include "hl/parallel.hpp"
#include "hl/theta_kernel.hpp"

using namespace hl;

namespace {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// accepts i, 2i, 1+2i, 0.5-0.25i, -1+i, or "x,y"
cplx parse_tau(const std::string& s) {
    std::smatch m;
    static const std::regex pair(R"(^\s*([-+0-9.eE]+)\s*,\s*([-+0-9.eE]+)\s*$)");
    static const std::regex cx(R"(^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)?\s*(?:([-+])\s*([0-9.]*(?:[eE][-+]?[0-9]+)?)\s*\*?\s*i)?\s*$)");
    static const std::regex pure(R"(^\s*([-+]?[0-9.]*(?:[eE][-+]?[0-9]+)?)\s*\*?\s*i\s*$)");
    cplx t;
    if (std::regex_match(s, m, pair)) {
        t = cplx(std::stod(m[1]), std::stod(m[2]));
    } else if (std::regex_match(s, m, pure)) {
        std::string b = m[1];
        double y = (b.empty() || b == "+") ? 1.0 : (b == "-" ? -1.0 : std::stod(b));
        t = cplx(0, y);
    } else if (std::regex_match(s, m, cx) && m[1].matched) {
        double x = std::stod(m[1]), y = 0;
        if (m[2].matched) {
            std::string b = m[3];
            y = b.empty() ? 1.0 : std::stod(b);
            if (m[2] == "-") y = -y;
        }
        t = cplx(x, y);
    } else {
        throw std::invalid_argument("cannot parse tau '" + s + "'");
    }
    if (!(t.imag() > 0)) throw std::invalid_argument("tau must lie in the upper half plane");
    return t;
}

Format parse_format(const std::string& f) {
    if (f == "json") return Format::Json;
    if (f == "csv") return Format::Csv;
    throw UsageError("unknown format " + f);
}

Kind parse_kind(const std::string& k) {
    if (k == "phi") return Kind::Phi;
    if (k == "psi") return Kind::Psi;
    throw UsageError("unknown kind " + k);
}

TorusData need_data(const std::string& path) {
    if (path.empty()) throw std::invalid_argument("--field-data is required");
    TorusData td = load(path);
    auto v = validate(td);
    if (!v.empty()) throw std::invalid_argument("invalid field data: " + v[0].code + " " + v[0].detail);
    return td;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hlift: Hilbert modular Eisenstein series, theta kernels and lifts"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    std::uint64_t seed = 7;
    std::string format = "json", out_path, data_path;
    app.add_option("--threads", threads, "worker threads (default: HLIFT_THREADS or 1)");
    app.add_option("--seed", seed, "seed for randomized property suites");
    app.add_option("--format", format, "json or csv");
    app.add_option("--out", out_path, "write the report to a file");

    // field
    auto* field = app.add_subcommand("field", "field data");
    field->require_subcommand(1);
    auto* fexport = field->add_subcommand("export", "export torus data for N = 2");
    long long disc = 12, prime = 13;
    std::string ideal = "1", file;
    int chi_index = 0;
    fexport->add_option("--disc", disc, "fundamental discriminant")->required();
    fexport->add_option("--prime", prime, "level p")->required();
    fexport->add_option("--ideal", ideal, "generator of c, e.g. 4+sqrt3");
    fexport->add_option("--chi", chi_index, "index among totally odd characters");
    fexport->add_option("-o,--output", file, "output file")->required();
    auto* fvalidate = field->add_subcommand("validate", "validate a torus data file");
    fvalidate->add_option("--field-data", data_path)->required();

    // lfunc
    auto* lf = app.add_subcommand("lfunc", "Hecke L-function of the totally odd character");
    double s_val = 0, lf_tol = 1e-12, tol = 1e-10;
    lf->add_option("--disc", disc, "fundamental discriminant");
    lf->add_option("--field-data", data_path);
    lf->add_option("--s", s_val, "real argument");
    lf->add_option("--chi", chi_index);
    lf->add_option("--tol", lf_tol);

    // eisenstein
    auto* eis = app.add_subcommand("eisenstein", "Eisenstein series");
    eis->require_subcommand(1);
    double cutoff = 30;
    std::string tau_str = "i";
    long long n_max = 8;
    auto* ecoeffs = eis->add_subcommand("coeffs", "Fourier coefficients");
    auto* eeval = eis->add_subcommand("eval", "evaluate E(tau, s)");
    auto* ederiv = eis->add_subcommand("derivative", "expansion of the s-derivative at s = 0");
    auto* echeck = eis->add_subcommand("check", "functional equation and vanishing checks");
    for (auto* sc : {ecoeffs, eeval, ederiv, echeck}) {
        sc->add_option("--field-data", data_path)->required();
        sc->add_option("--cutoff", cutoff, "L1 cutoff on nu");
    }
    ecoeffs->add_option("--s", s_val);
    eeval->add_option("--s", s_val);
    eeval->add_option("--tau", tau_str);
    ederiv->add_option("--tau", tau_str);
    ederiv->add_option("--nmax", n_max);
    echeck->add_option("--s", s_val);

    // kernel
    auto* kern = app.add_subcommand("kernel", "theta kernel identities");
    kern->require_subcommand(1);
    auto* kcheck = kern->add_subcommand("check", "Fourier transform and transgression checks");
    int samples = 10;
    kcheck->add_option("--samples", samples);

    // period
    auto* per = app.add_subcommand("period", "torus period of the theta kernel");
    std::string kind = "phi";
    per->add_option("--field-data", data_path)->required();
    per->add_option("--tau", tau_str);
    per->add_option("--s", s_val);
    per->add_option("--kind", kind, "phi or psi");
    per->add_option("--tol", tol);

    // lift
    auto* lift = app.add_subcommand("lift", "theta lift of a weakly holomorphic input");
    lift->require_subcommand(1);
    long long p_lift = 13;
    double tmax = 32, ltol = 1e-6, h = 1e-3;
    std::vector<std::string> taus{"i", "1+2i"};
    auto* lperiod = lift->add_subcommand("period", "regularized period");
    auto* lalpha = lift->add_subcommand("alpha", "exact algebraic part");
    auto* ladj = lift->add_subcommand("adjoint", "adjointness residuals");
    for (auto* sc : {lperiod, lalpha, ladj}) sc->add_option("--field-data", data_path)->required();
    for (auto* sc : {lperiod, lalpha}) sc->add_option("--p", p_lift, "level of the hauptmodul");
    lperiod->add_option("--tmax", tmax);
    lperiod->add_option("--tol", ltol);
    ladj->add_option("--tau", taus);
    ladj->add_option("--step", h, "finite-difference step");

    auto* all = app.add_subcommand("check-all", "all acceptance checks as one report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    if (threads <= 0) {
        const char* env = std::getenv("HLIFT_THREADS");
        threads = env ? std::atoi(env) : 1;
    }
    set_thread_count(std::max(1, threads));

    Json rep;
    try {
        const Format fmt = parse_format(format);
        if (*fexport) {
            Field F(disc);
            auto G = narrow_class_group(F);
            auto chis = totally_odd_characters(F, G);
            if (chis.empty()) throw std::invalid_argument("no totally odd character for this discriminant");
            auto td = export_n2(F, G, chis.at(chi_index), F.principal(F.parse(ideal)), prime);
            auto v = validate(td);
            if (!v.empty()) throw std::invalid_argument("export failed validation: " + v[0].code);
            save(td, file);
            rep["provenance"] = provenance("field_data", Json::object());
            rep["file"] = file;
            rep["disc"] = disc;
            rep["prime"] = prime;
            rep["ideal"] = ideal;
            rep["class_count"] = td.class_count;
            rep["norm_c"] = to_json(td.norm_c);
        } else if (*fvalidate) {
            TorusData td = load(data_path);
            auto v = validate(td);
            rep["provenance"] = provenance("field_data", Json::object());
            Json arr = Json::array();
            for (auto& x : v) arr.push_back({{"code", x.code}, {"detail", x.detail}});
            rep["violations"] = arr;
            std::cout << render(rep, fmt);
            return v.empty() ? 0 : 2;
        } else if (*lf) {
            Field F(disc);
            NarrowClassGroup G;
            NarrowCharacter chi;
            if (!data_path.empty()) {
                FieldContext ctx = field_context(need_data(data_path));
                F = ctx.F;
                G = ctx.G;
                chi = ctx.chi;
            } else {
                G = narrow_class_group(F);
                auto chis = totally_odd_characters(F, G);
                if (chis.empty()) throw std::invalid_argument("no totally odd character for this discriminant");
                chi = chis.at(chi_index);
            }
            HeckeL L(F, G, chi);
            auto lam = L.lambda_continuation(s_val, lf_tol);
            auto l = L.l_continuation(s_val, lf_tol);
            rep["provenance"] = provenance("lfunc", Json{{"tol", lf_tol}});
            rep["disc"] = F.D;
            rep["s"] = s_val;
            rep["Lambda"] = {{"value", lam.value}, {"error", lam.error}, {"method", lam.method}};
            rep["L"] = {{"value", l.value}, {"error", l.error}, {"method", l.method}};
            rep["root_number"] = L.root_number();
            if (auto e = L.exact_L0()) rep["L0_exact"] = to_json(*e);
            rep["Lambda_prime_0"] = L.lambda_derivative0();
        } else if (*ecoeffs || *eeval || *ederiv || *echeck) {
            TorusData td = need_data(data_path);
            rep["provenance"] = provenance("eisenstein", Json{{"cutoff", cutoff}}, Json{{"l1_cutoff", cutoff}});
            if (*ecoeffs) {
                auto e = build_expansion(td, cutoff);
                Json arr = Json::array();
                for (auto& t : e.terms) {
                    if (t.divisors.empty()) continue;
                    arr.push_back({{"nu", e.ctx.F.str(t.nu)}, {"trace", t.trace}, {"sigma", t.sigma(s_val)}});
                }
                rep["s"] = s_val;
                rep["coefficients"] = arr;
            } else if (*eeval) {
                auto e = build_expansion(td, cutoff);
                cplx tau = parse_tau(tau_str);
                auto v = eval_series(e, tau, s_val);
                bool vanishing = e.chi_c() == -e.chi_d() && s_val == 0;
                rep["tau"] = to_json(tau);
                rep["s"] = s_val;
                rep["value"] = to_json(v.value);
                rep["constant_term"] = to_json(v.constant_term);
                rep["tail_bound"] = v.tail;
                rep["terms"] = v.terms;
                rep["vanishing"] = vanishing;
            } else if (*ederiv) {
                auto d = build_derivative(td, n_max, cutoff);
                cplx tau = parse_tau(tau_str);
                double tail = 0;
                cplx v = eval_derivative(d, tau, &tail);
                rep["tau"] = to_json(tau);
                rep["value"] = to_json(v);
                rep["tail_bound"] = tail;
                rep["B"] = to_json(d.B);
                rep["A"] = d.A;
                rep["log_alpha"] = to_json(d.log_alpha);
                Json js = Json::array();
                for (auto& [n, j] : d.J) js.push_back({{"n", n}, {"J", to_json(j.value)}, {"log", j.log.value()}});
                rep["J"] = js;
            } else {
                auto e = build_expansion(td, cutoff);
                auto fe = funceq_check(e, s_val == 0 ? 0.37 : s_val);
                rep["funceq"] = {{"checked", fe.checked}, {"max_residual", fe.max_residual}};
                int exact_ok = 0, exact_n = 0;
                for (auto& t : e.terms) {
                    if (exact_n >= 20) break;
                    if (t.divisors.empty()) continue;
                    ++exact_n;
                    exact_ok += funceq_exact(e.ctx, e.c, t.nu, 2) ? 1 : 0;
                }
                rep["funceq_exact"] = {{"checked", exact_n}, {"matches", exact_ok}};
                rep["vanishing_case"] = e.chi_c() == -e.chi_d();
                if (e.chi_c() == -e.chi_d()) rep["value_at_i_s0"] = to_json(eval_series(e, cplx(0, 1), 0.0).value);
                if (exact_ok != exact_n) {
                    std::cout << render(rep, fmt);
                    return 2;
                }
            }
        } else if (*kcheck) {
            auto c = check_kernel(seed, samples);
            rep["provenance"] = provenance("theta_kernel", Json{{"seed", seed}});
            rep["pass"] = c.pass;
            rep["data"] = c.data;
        } else if (*per) {
            TorusData td = need_data(data_path);
            cplx tau = parse_tau(tau_str);
            auto p = torus_period(td, tau, s_val, parse_kind(kind), tol);
            rep["provenance"] = provenance("theta_kernel", Json{{"tol", tol}}, Json{{"theta_tail", p.theta_tail}});
            rep["tau"] = to_json(tau);
            rep["s"] = s_val;
            rep["kind"] = kind;
            rep["value"] = to_json(p.value);
            rep["quadrature_error"] = p.quad_error;
            rep["log_u_range"] = p.log_u_range;
            rep["nodes"] = p.nodes;
        } else if (*lperiod || *lalpha) {
            TorusData td = need_data(data_path);
            if (td.p != p_lift) throw std::invalid_argument("--p does not match the level in the field data");
            auto f = hauptmodul(p_lift, 30);
            auto d = build_derivative(td, 2, 30.0);
            auto z = cusp_zero_expansion(d, p_lift);
            auto k = kappa_corrections(f, d, z, tmax);
            rep["provenance"] = provenance("lift", Json{{"tol", ltol}}, Json{{"tmax", tmax}});
            rep["p"] = p_lift;
            rep["kappa"] = to_json(k);
            if (*lalpha) {
                Json named = Json::array();
                named.push_back({{"factor", "alpha(chi,c)"}, {"q", to_json(d.log_alpha)}, {"e", to_json(f.inf.constant)}});
                for (auto& [n, a] : f.inf.principal)
                    named.push_back({{"factor", "J(" + std::to_string(n) + ")"}, {"q", to_json(d.J.at(n).value)}, {"e", to_json(Rational(-a))}});
                rep["named_factors"] = named;
                rep["alpha"] = to_json(k.alpha());
            } else {
                auto r = regularized_period(f, td, tmax, ltol);
                double rhs = k.rhs(p_lift);
                rep["period"] = to_json(r);
                rep["minus4_period"] = -4 * r.value;
                rep["closure_rel"] = std::fabs(-4 * r.value - rhs) / std::fabs(rhs);
            }
        } else if (*ladj) {
            TorusData td = need_data(data_path);
            std::vector<cplx> pts;
            for (auto& s : taus) pts.push_back(parse_tau(s));
            auto r = adjointness_check(td, pts, h);
            rep["provenance"] = provenance("lift", Json{{"h", h}});
            Json arr = Json::array();
            double worst = 0;
            for (auto& s : r) {
                arr.push_back({{"tau", to_json(s.tau)}, {"lhs", to_json(s.lhs)}, {"rhs", to_json(s.rhs)}, {"residual", s.residual}});
                worst = std::max(worst, s.residual);
            }
            rep["points"] = arr;
            rep["max_residual"] = worst;
        } else if (*all) {
            rep = checks_json(run_checks(seed), seed);
        }
        std::string text = render(rep, fmt);
        if (!out_path.empty()) {
            std::ofstream o(out_path);
            if (!o) throw std::invalid_argument("cannot write " + out_path);
            o << text;
        } else {
            std::cout << text;
        }
        if (*all && !rep["all_pass"].get<bool>()) return 3;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
}
