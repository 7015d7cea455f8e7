#include "hl/lift.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hl/parallel.hpp"
#include "hl/errors.hpp"

namespace hl {

namespace {

constexpr double kPi = std::numbers::pi;

template <int N>
void gl_fill(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    x.clear();
    w.clear();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0) {
            x.push_back(m);
            w.push_back(h * wt[i]);
            continue;
        }
        x.push_back(m - h * ab[i]);
        w.push_back(h * wt[i]);
        x.push_back(m + h * ab[i]);
        w.push_back(h * wt[i]);
    }
}

// power series helpers on integer coefficient vectors of length n
void mul_one_minus(std::vector<BigInt>& a, std::size_t k) {
    for (std::size_t i = a.size(); i-- > k;) a[i] -= a[i - k];
}
void div_one_minus(std::vector<BigInt>& a, std::size_t k) {
    for (std::size_t i = k; i < a.size(); ++i) a[i] += a[i - k];
}

// prod_n (1 - x^(pa n))^r (1 - x^(pb n))^-r to length len
std::vector<BigInt> eta_ratio_series(long long pa, long long pb, int r, std::size_t len) {
    std::vector<BigInt> a(len, 0);
    a[0] = 1;
    for (std::size_t k = pa; k < len; k += pa)
        for (int j = 0; j < r; ++j) mul_one_minus(a, k);
    for (std::size_t k = pb; k < len; k += pb)
        for (int j = 0; j < r; ++j) div_one_minus(a, k);
    return a;
}

double bigd(const BigInt& b) { return static_cast<double>(b); }

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    switch (n) {
        case 8: gl_fill<8>(a, b, x, w); break;
        case 10: gl_fill<10>(a, b, x, w); break;
        case 12: gl_fill<12>(a, b, x, w); break;
        case 16: gl_fill<16>(a, b, x, w); break;
        case 20: gl_fill<20>(a, b, x, w); break;
        case 24: gl_fill<24>(a, b, x, w); break;
        case 32: gl_fill<32>(a, b, x, w); break;
        case 40: gl_fill<40>(a, b, x, w); break;
        case 48: gl_fill<48>(a, b, x, w); break;
        case 64: gl_fill<64>(a, b, x, w); break;
        default: throw std::invalid_argument("unsupported Gauss-Legendre order " + std::to_string(n));
    }
}

cplx dedekind_eta(cplx tau) {
    if (!(tau.imag() > 0)) throw std::domain_error("Im tau must be positive");
    const cplx q = std::exp(cplx(0, 2 * kPi) * tau);
    const double aq = std::abs(q);
    cplx prod = 1, qn = q;
    for (int n = 1; n < 1000000; ++n) {
        prod *= 1.0 - qn;
        if (std::pow(aq, n) < 1e-18) break;
        qn *= q;
    }
    return std::exp(cplx(0, 2 * kPi / 24) * tau) * prod;
}

MaassInput hauptmodul(long long p, int n_max) {
    if (p != 2 && p != 3 && p != 5 && p != 7 && p != 13) throw std::invalid_argument("hauptmodul: unsupported p");
    if (n_max < 1) throw std::invalid_argument("hauptmodul: n_max must be positive");
    const int r = static_cast<int>(24 / (p - 1));
    MaassInput f;
    f.weight = 0;
    f.p = p;
    f.q_offset = -1;
    f.q_inf = eta_ratio_series(1, p, r, n_max + 2);
    f.inf.width = 1;
    f.inf.principal[1] = Rational(f.q_inf[0]);
    f.inf.constant = Rational(f.q_inf[1]);
    // f(-1/tau) = p^(r/2) (eta(tau)/eta(tau/p))^r = p^(r/2) x prod (1-x^(pn))^r (1-x^n)^-r, x = q^(1/p)
    BigInt sc = 1;
    for (int j = 0; j < r / 2; ++j) sc *= p;
    f.zero_scale = Rational(sc);
    f.zero_offset = 1;
    f.q_zero = eta_ratio_series(p, 1, r, n_max + 1);
    f.zero.width = p;
    f.zero.constant = 0;
    const double scd = bigd(sc);
    f.eval = [p, r](cplx tau) { return std::pow(dedekind_eta(tau) / dedekind_eta(double(p) * tau), r); };
    f.eval_zero = [p, r, scd](cplx tau) {
        return scd * std::pow(dedekind_eta(tau) / dedekind_eta(tau / double(p)), r);
    };
    return f;
}

MaassInput scale(const MaassInput& f, long long d) {
    MaassInput g = f;
    for (auto& c : g.q_inf) c *= d;
    g.zero_scale *= d;
    for (auto& [n, a] : g.inf.principal) a *= d;
    for (auto& [n, a] : g.zero.principal) a *= d;
    g.inf.constant *= d;
    g.zero.constant *= d;
    for (auto& [n, a] : g.minus) a *= double(d);
    const double dd = double(d);
    if (f.eval) g.eval = [e = f.eval, dd](cplx t) { return dd * e(t); };
    if (f.eval_zero) g.eval_zero = [e = f.eval_zero, dd](cplx t) { return dd * e(t); };
    return g;
}

MaassInput add(const MaassInput& f, const MaassInput& g) {
    if (f.p != g.p || f.weight != g.weight) throw std::invalid_argument("add: level or weight mismatch");
    MaassInput h = f;
    long long off = std::min(f.q_offset, g.q_offset);
    std::size_t end = std::max(f.q_offset + f.q_inf.size(), g.q_offset + g.q_inf.size()) - off;
    h.q_offset = off;
    h.q_inf.assign(end, 0);
    for (std::size_t i = 0; i < f.q_inf.size(); ++i) h.q_inf[f.q_offset - off + i] += f.q_inf[i];
    for (std::size_t i = 0; i < g.q_inf.size(); ++i) h.q_inf[g.q_offset - off + i] += g.q_inf[i];
    // zero expansions are kept only when they share scale and offset
    if (f.zero_scale == g.zero_scale && f.zero_offset == g.zero_offset) {
        h.q_zero.assign(std::max(f.q_zero.size(), g.q_zero.size()), 0);
        for (std::size_t i = 0; i < f.q_zero.size(); ++i) h.q_zero[i] += f.q_zero[i];
        for (std::size_t i = 0; i < g.q_zero.size(); ++i) h.q_zero[i] += g.q_zero[i];
    } else {
        h.q_zero.clear();
    }
    for (auto& [n, a] : g.inf.principal) h.inf.principal[n] += a;
    for (auto& [n, a] : g.zero.principal) h.zero.principal[n] += a;
    h.inf.constant += g.inf.constant;
    h.zero.constant += g.zero.constant;
    for (auto& [n, a] : g.minus) h.minus[n] += a;
    if (f.eval && g.eval)
        h.eval = [a = f.eval, b = g.eval](cplx t) { return a(t) + b(t); };
    else
        h.eval = nullptr;
    if (f.eval_zero && g.eval_zero)
        h.eval_zero = [a = f.eval_zero, b = g.eval_zero](cplx t) { return a(t) + b(t); };
    else
        h.eval_zero = nullptr;
    return h;
}

std::map<long long, cplx> xi_operator(const MaassInput& f) {
    std::map<long long, cplx> g;
    for (auto& [n, a] : f.minus)
        if (a != cplx(0)) g[n] = -std::conj(a);
    return g;
}

namespace {

const JValue& need_j(const DerivativeExpansion& d, long long n) {
    auto it = d.J.find(n);
    if (it == d.J.end())
        throw std::out_of_range("J(" + std::to_string(n) + ") missing from the derivative expansion");
    return it->second;
}

}  // namespace

KappaPair kappa_corrections(const MaassInput& f, const DerivativeExpansion& d, const CuspZero& z, double T) {
    if (d.chi_c != -d.chi_d) throw std::domain_error("kappa_corrections needs chi(c) = -chi(d)");
    KappaPair k;
    k.p = z.p;
    k.inf.a0 = f.inf.constant;
    k.inf.A = d.A;
    k.inf.factor = 1;
    k.inf.log_alpha.add(d.log_alpha, f.inf.constant);
    for (auto& [n, a] : f.inf.principal) k.inf.log_alpha.add(need_j(d, n).log, -a);

    const DerivativeExpansion& e = z.dexp;
    k.zero.a0 = f.zero.constant;
    k.zero.A = e.A;
    k.zero.factor = z.e_factor;
    k.zero.log_alpha.add(e.log_alpha, f.zero.constant);
    if (f.zero.constant != 0) k.zero.log_alpha.add(Rational(z.p), -e.B * f.zero.constant);
    for (auto& [n, a] : f.zero.principal) k.zero.log_alpha.add(need_j(e, z.p * n).log, -a);

    double lim = 0;
    for (auto& [n, a] : f.inf.principal) lim += std::fabs(static_cast<double>(a)) * std::fabs(d.a_coefficient(n, T));
    for (auto& [n, a] : f.zero.principal)
        lim += std::fabs(static_cast<double>(a)) * std::fabs(e.a_coefficient(z.p * n, T));
    k.limit_term = lim;
    return k;
}

AlgebraicLog KappaPair::alpha() const {
    AlgebraicLog a = inf.log_alpha;
    a.add(zero.log_alpha, zero.factor * p);
    return a;
}

namespace {

struct Node {
    cplx tau;      // point where the period is sampled
    cplx f_value;  // value of f on the coset
    double weight;
    double height;  // height in the standard domain
    double P = 0;
};

// CT(y) - lin y for the constant term of P(tau) g(tau), g = sum_k coef[k] q^(off + k)
double constant_term(const DerivativeExpansion& d, const std::vector<double>& coef, long long off, double y,
                     double lin) {
    double v = 0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        long long m = off + static_cast<long long>(i);
        if (coef[i] == 0) continue;
        double decay = std::exp(-2 * kPi * m * y);
        if (m > 0 && decay < 1e-300) break;
        double mode = d.psi_mode(-m, y);
        if (m == 0) mode += 0.25 * static_cast<double>(d.B) * y;
        v += coef[i] * decay * mode;
    }
    (void)lin;
    return v;
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
    if (b <= a) return 0;
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 15, tol, &err);
}

}  // namespace

RegularizedPeriod regularized_period(const MaassInput& f, const TorusData& td, double T_max, double tol,
                                     const PeriodOptions& opt) {
    if (!f.eval || !f.eval_zero) throw std::invalid_argument("regularized_period needs an evaluator");
    if (td.N != 2) throw std::invalid_argument("regularized_period: N = 2 only");
    if (f.p != td.p) throw std::invalid_argument("regularized_period: level mismatch");
    if (!td.exact) throw std::invalid_argument("regularized_period: torus data without exact field part");
    const long long p = f.p;
    const double pd = static_cast<double>(p);

    FieldContext ctx = field_context(td);
    DerivativeExpansion dinf = build_derivative(td, 1, opt.mode_cutoff);
    CuspZero z = cusp_zero_expansion(dinf, p);
    const DerivativeExpansion& d0 = z.dexp;
    TorusData td0 = export_n2(ctx.F, ctx.G, ctx.chi, d0.c, p);
    const double psi_factor = static_cast<double>(z.psi_factor());

    // nodes: coset 1 on x in [0, 1/2], the rest via x -> -x symmetry (P real and even in x)
    std::vector<Node> inf_nodes, zero_nodes;
    std::vector<double> xs, wx, ys, wy;
    gauss_legendre(opt.nx, 0.0, 0.5, xs, wx);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double b = std::sqrt(1 - xs[i] * xs[i]);
        gauss_legendre(opt.ny, b, opt.Y0, ys, wy);
        for (std::size_t j = 0; j < ys.size(); ++j) {
            cplx tau(xs[i], ys[j]);
            inf_nodes.push_back({tau, f.eval(tau), 2 * wx[i] * wy[j] / (ys[j] * ys[j]), ys[j]});
        }
    }
    // cusp 0 in w = (tau + j)/p; strips around j/p for j = 0..floor(p/2), half strip at j = 0
    const double rad = 1.0 / pd, half = 0.5 / pd;
    for (long long j = 0; 2 * j <= p; ++j) {
        double c0 = j / pd;
        double lo = (j == 0) ? 0.0 : c0 - half;
        double hi = std::min(c0 + half, 0.5);
        if (hi <= lo) continue;
        gauss_legendre(opt.nx0, lo, hi, xs, wx);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double dx = xs[i] - c0;
            double b = std::sqrt(rad * rad - dx * dx);
            gauss_legendre(opt.ny0, b, opt.Y1, ys, wy);
            for (std::size_t k = 0; k < ys.size(); ++k) {
                cplx w(xs[i], ys[k]);
                zero_nodes.push_back({w, f.eval_zero(pd * w), 2 * wx[i] * wy[k] / (ys[k] * ys[k]), pd * ys[k]});
            }
        }
    }
    parallel_for(inf_nodes.size(), [&](std::size_t i) {
        inf_nodes[i].P = torus_period(td, inf_nodes[i].tau, 0.0, Kind::Psi, opt.theta_tol).value.real();
    });
    parallel_for(zero_nodes.size(), [&](std::size_t i) {
        zero_nodes[i].P = psi_factor * torus_period(td0, zero_nodes[i].tau, 0.0, Kind::Psi, opt.theta_tol).value.real();
    });

    auto compact = [](const std::vector<Node>& nodes, double rho) {
        std::vector<double> v(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i)
            v[i] = nodes[i].weight * nodes[i].P * nodes[i].f_value.real() * std::pow(nodes[i].height, -rho);
        return tree_sum(v);
    };

    RegularizedPeriod out;
    out.nodes = static_cast<int>(inf_nodes.size() + zero_nodes.size());
    out.compact_inf = compact(inf_nodes, 0);
    out.compact_zero = compact(zero_nodes, 0);

    // Fourier data of f at both cusps
    std::vector<double> cinf(f.q_inf.size()), czero(f.q_zero.size());
    for (std::size_t i = 0; i < cinf.size(); ++i) cinf[i] = bigd(f.q_inf[i]);
    const double zs = static_cast<double>(f.zero_scale);
    for (std::size_t i = 0; i < czero.size(); ++i) czero[i] = zs * bigd(f.q_zero[i]);
    auto coef_at = [](const std::vector<double>& c, long long off, long long m) {
        long long i = m - off;
        return (i >= 0 && i < (long long)c.size()) ? c[i] : 0.0;
    };
    const double lin_inf = coef_at(cinf, f.q_offset, 0) * (-0.25 * static_cast<double>(dinf.B));
    const double lin_zero = psi_factor * coef_at(czero, f.zero_offset, 0) * (-0.25 * static_cast<double>(d0.B));
    out.log_coefficient = lin_inf + lin_zero;

    auto ct_inf = [&](double y) { return constant_term(dinf, cinf, f.q_offset, y, lin_inf); };
    auto ct_zero = [&](double y) { return psi_factor * constant_term(d0, czero, f.zero_offset, y, lin_zero); };
    const double qtol = std::max(tol * 1e-3, 1e-14);

    auto value_at = [&](double T) {
        double a = integrate([&](double y) { return ct_inf(y) / (y * y); }, opt.Y0, T, qtol);
        double b = integrate([&](double y) { return ct_zero(y) / (y * y); }, opt.Y1, T / pd, qtol);
        // lin (log T - log Y0) - lin log T
        double reg = -lin_inf * std::log(opt.Y0) + lin_zero * (-std::log(pd) - std::log(opt.Y1));
        return out.compact_inf + out.compact_zero + a + b + reg;
    };
    for (double T : {T_max / 4, T_max / 2, T_max}) out.ladder.emplace_back(T, value_at(T));
    double d1 = std::fabs(out.ladder[1].second - out.ladder[0].second);
    double d2 = std::fabs(out.ladder[2].second - out.ladder[1].second);
    out.ladder_change = d2;
    if (d2 > tol && !(d2 < d1)) throw NonConvergence("regularized period: T ladder does not converge");
    out.value = 2 * out.ladder[2].second - out.ladder[1].second;

    // rho variant: int P f y^-rho over the full domain, constant term at rho = 0
    auto value_rho = [&](double rho) {
        double v = compact(inf_nodes, rho) + compact(zero_nodes, rho);
        v += integrate([&](double y) { return (ct_inf(y) + lin_inf * y) * std::pow(y, -2 - rho); }, opt.Y0, T_max, qtol);
        v += lin_inf * std::pow(T_max, -rho) / rho;
        v += integrate([&](double y) { return (ct_zero(y) + lin_zero * y) * std::pow(pd * y, -rho) / (y * y); }, opt.Y1,
                       T_max, qtol);
        if (lin_zero != 0) v += lin_zero * std::pow(pd, -rho) * std::pow(T_max, -rho) / rho;
        return v;
    };
    const double r1 = opt.rho.at(0), r2 = opt.rho.at(1);
    // remove the pole lin/rho, then extrapolate linearly to rho = 0
    const double G1 = value_rho(r1) - out.log_coefficient / r1, G2 = value_rho(r2) - out.log_coefficient / r2;
    out.rho_value = (r2 * G1 - r1 * G2) / (r2 - r1);

    // junction checks: theta route against Fourier modes
    cplx a(0.3, opt.Y0), b(0.3, opt.Y1);
    double ta = torus_period(td, a, 0.0, Kind::Psi, opt.theta_tol).value.real();
    double tb = torus_period(td0, b, 0.0, Kind::Psi, opt.theta_tol).value.real();
    double ma = psi_period_modes(dinf, a).real(), mb = psi_period_modes(d0, b).real();
    out.continuity = std::max(std::fabs(ta - ma) / std::max(1.0, std::fabs(ma)),
                              std::fabs(tb - mb) / std::max(1.0, std::fabs(mb)));
    return out;
}

cplx lowering_fd(const std::function<cplx(cplx)>& F, cplx tau, double h) {
    const double y = tau.imag();
    auto d = [&](cplx e) { return (8.0 * (F(tau + e) - F(tau - e)) - (F(tau + 2.0 * e) - F(tau - 2.0 * e))) / (12 * h); };
    cplx dx = d(cplx(h, 0));
    cplx dy = d(cplx(0, h));
    return y * y * (dy - cplx(0, 1) * dx);
}

std::vector<AdjointSample> adjointness_check(const TorusData& td, const std::vector<cplx>& taus, double h) {
    if (td.N != 2) throw std::invalid_argument("adjointness_check: N = 2 only");
    if (!(h > 0) || h > 0.05) throw std::invalid_argument("adjointness_check: step out of range");
    const double ptol = 1e-12;
    std::vector<AdjointSample> out(taus.size());
    auto dS = [&](cplx t) {
        return (torus_period(td, t, h, Kind::Phi, ptol).value - torus_period(td, t, -h, Kind::Phi, ptol).value) /
               (2 * h);
    };
    parallel_for(taus.size(), [&](std::size_t i) {
        AdjointSample s;
        s.tau = taus[i];
        s.lhs = torus_period(td, taus[i], 0.0, Kind::Psi, ptol).value;
        s.rhs = -0.25 * lowering_fd(dS, taus[i], h);
        s.residual = std::abs(s.lhs - s.rhs);
        out[i] = s;
    });
    return out;
}

PairingValue petersson_pairing(const CuspPair& F, const CuspPair& g, int weight, long long p, double tol, double y_cut) {
    if (!F.at_inf || !F.zero_slash || !g.at_inf || !g.zero_slash)
        throw std::invalid_argument("petersson_pairing: incomplete evaluators");
    const double pd = static_cast<double>(p);
    // g decays at least like exp(-2 pi y / p) on every coset
    if (y_cut <= 0) y_cut = pd * std::log(1.0 / tol) / (2 * kPi) + 2;
    // cuspidality probe: |g| must drop between two heights
    {
        double g1 = std::abs(g.at_inf(cplx(0.1, 3.0))), g2 = std::abs(g.at_inf(cplx(0.1, 6.0)));
        double z1 = std::abs(g.zero_slash(cplx(0.1, 3.0 * pd))), z2 = std::abs(g.zero_slash(cplx(0.1, 6.0 * pd)));
        if (!(g2 <= g1 * 1e-3 + 1e-300) || !(z2 <= z1 * 1e-3 + 1e-300))
            throw std::invalid_argument("petersson_pairing: g is not cuspidal");
    }
    std::vector<double> xs, wx;
    gauss_legendre(24, -0.5, 0.5, xs, wx);
    // y pieces above the arc: [b, 2], then geometric blocks up to y_cut
    std::vector<double> cuts{2.0};
    while (cuts.back() < y_cut) cuts.push_back(std::min(y_cut, cuts.back() * 2));
    struct Pt {
        cplx tau;
        double w;
    };
    std::vector<Pt> pts;
    std::vector<double> ys, wy;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lo = std::sqrt(1 - xs[i] * xs[i]);
        for (double hi : cuts) {
            gauss_legendre(16, lo, hi, ys, wy);
            for (std::size_t k = 0; k < ys.size(); ++k)
                pts.push_back({cplx(xs[i], ys[k]), wx[i] * wy[k] * std::pow(ys[k], weight - 2)});
            lo = hi;
        }
    }
    std::vector<double> re(pts.size()), im(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        cplx t = pts[i].tau;
        cplx v = F.at_inf(t) * std::conj(g.at_inf(t));
        for (long long j = 0; j < p; ++j) {
            cplx tj = t + double(j);
            v += F.zero_slash(tj) * std::conj(g.zero_slash(tj));
        }
        v *= pts[i].w;
        re[i] = v.real();
        im[i] = v.imag();
    });
    PairingValue out;
    out.value = cplx(tree_sum(re), tree_sum(im));
    out.y_cut = y_cut;
    out.nodes = static_cast<int>(pts.size());
    return out;
}

}  // namespace hl
