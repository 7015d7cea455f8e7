#include "hl/eisenstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hl/parallel.hpp"
#include "hl/special_fn.hpp"
#include "hl/errors.hpp"

namespace hl {

namespace {

constexpr double kPi = std::numbers::pi;

std::map<BigInt, int> factor_int(BigInt n) {
    std::map<BigInt, int> f;
    if (n < 0) n = -n;
    for (BigInt p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
    }
    if (n > 1) ++f[n];
    return f;
}

QElem combo(const QElem& b1, const QElem& b2, long long m1, long long m2) {
    return QElem{b1.a * m1 + b2.a * m2, b1.b * m1 + b2.b * m2};
}

struct NuLattice {
    QElem b1, b2;
    Eigen::MatrixXd B;
};

NuLattice nu_lattice(const FieldContext& ctx, const FractionalIdeal& c) {
    const Field& F = ctx.F;
    FractionalIdeal I = F.mul(c, F.inverse(F.different));
    auto [b1, b2] = F.basis(I);
    NuLattice L{b1, b2, Eigen::MatrixXd(2, 2)};
    for (int k = 0; k < 2; ++k) {
        L.B(k, 0) = F.embed(b1, k);
        L.B(k, 1) = F.embed(b2, k);
    }
    return L;
}

// sup over a > 0 of |a|^(1/2+s)(K_{1/2+s}+K_{1/2-s})(2 pi a) e^{2 pi a} / (1+a)^|s|
double k_envelope(double s) {
    double best = 0;
    for (int i = 0; i <= 90; ++i) {
        double a = std::pow(10.0, -6.0 + i * 0.1);
        double v = std::pow(a, 0.5 + s) *
                   (bessel_k_scaled(0.5 + s, 2 * kPi * a, 1e-8) + bessel_k_scaled(0.5 - s, 2 * kPi * a, 1e-8)) /
                   std::pow(1 + a, std::fabs(s));
        best = std::max(best, v);
    }
    return 1.5 * best;
}

}  // namespace

AlgebraicLog AlgebraicLog::of(const Rational& q, const Rational& e) {
    AlgebraicLog a;
    a.add(q, e);
    return a;
}

AlgebraicLog& AlgebraicLog::add(const Rational& q, const Rational& e) {
    if (q <= 0) throw std::invalid_argument("AlgebraicLog: base must be positive");
    if (e == 0) return *this;
    for (auto& [p, k] : factor_int(boost::multiprecision::numerator(q))) f_[p] += e * k;
    for (auto& [p, k] : factor_int(boost::multiprecision::denominator(q))) f_[p] -= e * k;
    for (auto it = f_.begin(); it != f_.end();) it = (it->second == 0) ? f_.erase(it) : std::next(it);
    return *this;
}

AlgebraicLog& AlgebraicLog::add(const AlgebraicLog& o, const Rational& e) {
    for (auto& [p, k] : o.f_) f_[p] += e * k;
    for (auto it = f_.begin(); it != f_.end();) it = (it->second == 0) ? f_.erase(it) : std::next(it);
    return *this;
}

AlgebraicLog AlgebraicLog::scaled(const Rational& e) const {
    AlgebraicLog a;
    a.add(*this, e);
    return a;
}

double AlgebraicLog::value() const {
    double v = 0;
    for (auto& [p, e] : f_) v += static_cast<double>(e) * std::log(static_cast<double>(p));
    return v;
}

bool AlgebraicLog::is_rational() const {
    for (auto& [p, e] : f_)
        if (boost::multiprecision::denominator(e) != 1) return false;
    return true;
}

Rational AlgebraicLog::to_rational() const {
    if (!is_rational()) throw std::domain_error("AlgebraicLog has fractional exponents");
    Rational r = 1;
    for (auto& [p, e] : f_) r *= rational_pow(Rational(p), static_cast<long long>(boost::multiprecision::numerator(e)));
    return r;
}

std::string AlgebraicLog::str() const {
    if (f_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [p, e] : f_) {
        if (!first) os << "*";
        first = false;
        os << p << "^(" << e << ")";
    }
    return os.str();
}

std::vector<Divisor> sigma_divisors(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu) {
    const Field& F = ctx.F;
    if (nu.is_zero()) return {};
    if (!F.mul(F.principal(nu), F.different).is_integral()) return {};
    std::vector<Divisor> out;
    for (auto& n : divisors_between(F, nu, c)) {
        Rational N = n.norm();
        out.push_back(Divisor{ctx.chi_of(n), static_cast<long long>(boost::multiprecision::numerator(N))});
    }
    return out;
}

double sigma_div(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu, double s) {
    NuTerm t;
    t.divisors = sigma_divisors(ctx, c, nu);
    return t.sigma(s);
}

DirichletPoly sigma_poly(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu) {
    DirichletPoly p;
    for (auto& d : sigma_divisors(ctx, c, nu)) p[Rational(d.norm)] += d.chi;
    for (auto it = p.begin(); it != p.end();) it = (it->second == 0) ? p.erase(it) : std::next(it);
    return p;
}

double NuTerm::sigma(double s) const {
    double v = 0;
    for (auto& d : divisors) v += d.chi * std::pow((double)d.norm, -2 * s);
    return v;
}

double NormalizationC::value(double s) const {
    double g = std::tgamma(1 + s);
    double ip = (i_power % 4 == 0) ? 1.0 : (i_power % 4 == 2 ? -1.0 : 0.0);
    return static_cast<double>(two_power) * ip * std::pow(kPi, -2 * (1 + s)) * g * g * std::sqrt((double)disc);
}

EisensteinExpansion::EisensteinExpansion(FieldContext ctx_, FractionalIdeal c_, double cutoff_)
    : ctx(std::move(ctx_)), c(c_), cutoff(cutoff_) {
    C.disc = ctx.F.D;
    L_ = std::make_shared<HeckeL>(ctx.F, ctx.G, ctx.chi);
    mu_ = std::make_shared<std::mutex>();
    cache_ = std::make_shared<std::map<double, LValue>>();
}

LValue EisensteinExpansion::lambda(double S) const {
    std::lock_guard<std::mutex> lk(*mu_);
    auto it = cache_->find(S);
    if (it != cache_->end()) return it->second;
    LValue v = L_->lambda_continuation(S);
    cache_->emplace(S, v);
    return v;
}

int EisensteinExpansion::chi_c() const { return ctx.chi_of(c); }
int EisensteinExpansion::chi_d() const { return ctx.chi_of(ctx.F.different); }

EisensteinExpansion build_expansion(const TorusData& td, double cutoff) {
    FieldContext ctx = field_context(td);
    FractionalIdeal c = ctx.c;
    return build_expansion(ctx, c, cutoff);
}

EisensteinExpansion build_expansion(const FieldContext& ctx, const FractionalIdeal& c, double cutoff) {
    if (!(cutoff > 0)) throw std::invalid_argument("cutoff must be positive");
    EisensteinExpansion e(ctx, c, cutoff);
    NuLattice L = nu_lattice(ctx, c);
    auto pts = l1_ball(L.B, cutoff);
    e.terms.resize(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        NuTerm& t = e.terms[i];
        t.nu = combo(L.b1, L.b2, pts[i].coeffs[0], pts[i].coeffs[1]);
        t.e1 = pts[i].x(0);
        t.e2 = pts[i].x(1);
        t.trace = static_cast<long long>(boost::multiprecision::numerator(ctx.F.trace(t.nu)));
        t.l1 = pts[i].l1;
        t.divisors = sigma_divisors(ctx, c, t.nu);
    });
    return e;
}

double series_tail(const EisensteinExpansion& e, double y, double s) {
    double D = (double)e.ctx.F.D;
    double ex = 1 + std::max(0.0, -2 * s);
    double H = k_envelope(s);
    DecayWeight w;
    w.amp = std::pow(y, -2 * s) * H * H * std::pow(1 + y, 2 * std::fabs(s)) * std::pow(D / 4, ex);
    w.rate = 2 * kPi * y;
    w.degree = (int)std::ceil(2 * ex + 2 * std::fabs(s));
    return ball_tail_bound(nu_lattice(e.ctx, e.c).B, e.cutoff, w);
}

SeriesValue eval_series(const EisensteinExpansion& e, cplx tau, double s) {
    const double x = tau.real(), y = tau.imag();
    if (!(y > 0)) throw std::domain_error("Im tau must be positive");
    SeriesValue out;
    LValue lm = e.lambda(-2 * s), lp = e.lambda(2 * s);
    double Nd = (double)e.ctx.F.D;
    double Nc = static_cast<double>(e.c.norm());
    double ct = std::pow(y, 2 * s) * e.chi_d() * std::pow(Nd, -2 * s) * lm.value +
                std::pow(y, -2 * s) * e.chi_c() * std::pow(Nc, -2 * s) * lp.value;
    out.constant_term = ct;
    out.lambda_error = std::pow(y, 2 * s) * std::pow(Nd, -2 * s) * lm.error + std::pow(y, -2 * s) * std::pow(Nc, -2 * s) * lp.error;
    cplx sum = 0;
    for (auto& t : e.terms) {
        double sg = t.sigma(s);
        if (sg == 0) continue;
        double k = k_weight_decayed(s, y * t.e1) * k_weight_decayed(s, y * t.e2);
        sum += sg * k * std::polar(1.0, 2 * kPi * x * (double)t.trace);
        ++out.terms;
    }
    out.value = ct + std::pow(y, -2 * s) * sum;
    out.tail = series_tail(e, y, s);
    return out;
}

double orbit_window_lo() { return std::exp(-0.1234567); }

DirectValue direct_lattice_eval(const TorusData& td, cplx tau, double s, double M) {
    if (s < 1) throw std::domain_error("direct lattice sum needs Re(s) >= 1");
    const double x = tau.real(), y = tau.imag();
    if (!(y > 0)) throw std::domain_error("Im tau must be positive");
    FieldContext ctx = field_context(td);
    const Field& F = ctx.F;
    double e1 = F.embed(F.eps_plus, 0), e2 = F.embed(F.eps_plus, 1);
    double r_eps = std::max(e1 / e2, e2 / e1);
    const double lo = orbit_window_lo(), hi = lo * r_eps;
    // |z1| <= sqrt(M hi), |z2| <= sqrt(M / lo)
    const double R1 = std::sqrt(M * hi), R2 = std::sqrt(M / lo);
    DirectValue out;
    out.norm_bound = M;
    cplx total = 0, total_half = 0;
    std::size_t count = 0;
    for (int ci = 0; ci < ctx.G.order; ++ci) {
        const FractionalIdeal& a = ctx.G.representatives[ci];
        FractionalIdeal ac = F.mul(a, ctx.c);
        auto emb = [&](const FractionalIdeal& I) {
            auto [b1, b2] = F.basis(I);
            Eigen::Matrix2d m;
            for (int k = 0; k < 2; ++k) {
                m(k, 0) = F.embed(b1, k);
                m(k, 1) = F.embed(b2, k);
            }
            return m;
        };
        Eigen::Matrix2d Bv = emb(ac), Bw = emb(a);
        Eigen::Matrix2d Bwinv = Bw.inverse();
        double Na = static_cast<double>(a.norm());
        double wt = ctx.chi(ci) * std::pow(Na, 1 + 2 * s);
        Eigen::Matrix2d Sv = Bv;
        Sv.row(0) *= y / R1;
        Sv.row(1) *= y / R2;
        Eigen::Matrix2d Svinv = Sv.inverse();
        long long K0 = (long long)std::ceil(Svinv.row(0).cwiseAbs().sum()) + 1;
        long long K1 = (long long)std::ceil(Svinv.row(1).cwiseAbs().sum()) + 1;
        std::vector<cplx> part(2 * K0 + 1, 0), part_half(2 * K0 + 1, 0);
        std::vector<std::size_t> cnt(2 * K0 + 1, 0);
        parallel_for(2 * K0 + 1, [&](std::size_t i0) {
            long long m0 = (long long)i0 - K0;
            cplx acc = 0, acc_half = 0;
            std::size_t nloc = 0;
            for (long long m1 = -K1; m1 <= K1; ++m1) {
                Eigen::Vector2d v = Bv * Eigen::Vector2d((double)m0, (double)m1);
                double h1 = std::fabs(y * v(0)), h2 = std::fabs(y * v(1));
                if (h1 > R1 || h2 > R2) continue;
                double W1 = std::sqrt(R1 * R1 - h1 * h1), W2 = std::sqrt(R2 * R2 - h2 * h2);
                if (h2 > 0) W1 = std::min(W1, M / h2);
                if (h1 > 0) W2 = std::min(W2, M / h1);
                Eigen::Vector2d ctr = -x * v;
                Eigen::Vector2d mc = Bwinv * ctr;
                long long L0 = (long long)std::ceil(std::fabs(Bwinv(0, 0)) * W1 + std::fabs(Bwinv(0, 1)) * W2) + 1;
                long long L1 = (long long)std::ceil(std::fabs(Bwinv(1, 0)) * W1 + std::fabs(Bwinv(1, 1)) * W2) + 1;
                long long c0 = (long long)std::llround(mc(0)), c1 = (long long)std::llround(mc(1));
                for (long long n0 = c0 - L0; n0 <= c0 + L0; ++n0) {
                    for (long long n1 = c1 - L1; n1 <= c1 + L1; ++n1) {
                        double w1 = Bw(0, 0) * n0 + Bw(0, 1) * n1;
                        double w2 = Bw(1, 0) * n0 + Bw(1, 1) * n1;
                        cplx z1(x * v(0) + w1, y * v(0)), z2(x * v(1) + w2, y * v(1));
                        double a1 = std::abs(z1), a2 = std::abs(z2);
                        if (a1 == 0 || a2 == 0) continue;
                        double r = a1 / a2;
                        if (r < lo || r >= hi) continue;
                        double nz = a1 * a2;
                        if (nz > M) continue;
                        cplx term = std::pow(y, 2 * s) / (z1 * z2 * std::pow(nz, 2 * s));
                        acc += term;
                        if (nz <= M / 2) acc_half += term;
                        ++nloc;
                    }
                }
            }
            part[i0] = acc;
            part_half[i0] = acc_half;
            cnt[i0] = nloc;
        });
        cplx cls = 0, cls_half = 0;
        for (std::size_t i = 0; i < part.size(); ++i) {
            cls += part[i];
            cls_half += part_half[i];
            count += cnt[i];
        }
        total += wt * cls;
        total_half += wt * cls_half;
    }
    double Cs = NormalizationC{Rational(1, 4), 2, F.D}.value(s);
    out.value = Cs * total;
    out.tail_estimate = std::abs(Cs * (total - total_half));
    out.points = count;
    return out;
}

JValue j_coefficient(const FieldContext& ctx, const FractionalIdeal& c, long long n) {
    NuLattice L = nu_lattice(ctx, c);
    JValue J;
    J.n = n;
    auto pts = totally_positive_trace(L.B, n);
    J.nu_count = pts.size();
    for (auto& p : pts) {
        QElem nu = combo(L.b1, L.b2, p.coeffs[0], p.coeffs[1]);
        for (auto& d : sigma_divisors(ctx, c, nu)) J.log.add(Rational(d.norm), Rational(8 * d.chi));
    }
    J.value = J.log.to_rational();
    return J;
}

DerivativeExpansion build_derivative(const TorusData& td, long long n_max, double cutoff) {
    FieldContext ctx = field_context(td);
    FractionalIdeal c = ctx.c;
    return build_derivative(ctx, c, n_max, cutoff);
}

DerivativeExpansion build_derivative(const FieldContext& ctx, const FractionalIdeal& c, long long n_max, double cutoff) {
    DerivativeExpansion d{ctx, c};
    d.chi_c = ctx.chi_of(c);
    d.chi_d = ctx.chi_of(ctx.F.different);
    if (d.chi_c != -d.chi_d) throw std::domain_error("derivative expansion needs chi(c) = -chi(d)");
    HeckeL L(ctx.F, ctx.G, ctx.chi);
    auto L0 = L.exact_L0();
    if (!L0) throw NonConvergence("L(chi,0) could not be determined exactly");
    d.L0 = *L0;
    d.lambda_prime0 = L.lambda_derivative0();
    Rational Nc = c.norm(), Nd = Rational(ctx.F.D);
    d.B = 4 * d.chi_d * d.L0;
    d.A = -4.0 * d.chi_d * d.lambda_prime0;
    d.log_alpha = AlgebraicLog::of(Nc / Nd, 2 * d.chi_d * d.L0);
    d.printed.B = d.chi_d * d.L0;
    d.printed.A = d.chi_d * d.lambda_prime0;
    d.printed.log_alpha = AlgebraicLog::of(Nc * Nd, -d.chi_d * d.L0);
    d.n_max = n_max;
    std::vector<JValue> js(n_max);
    parallel_for((std::size_t)n_max, [&](std::size_t i) { js[i] = j_coefficient(ctx, c, (long long)i + 1); });
    for (auto& j : js) d.J[j.n] = j;
    d.cutoff = cutoff;
    NuLattice NL = nu_lattice(ctx, c);
    auto pts = l1_ball(NL.B, cutoff);
    std::vector<MixedTerm> mixed(pts.size());
    std::vector<char> keep(pts.size(), 0);
    parallel_for(pts.size(), [&](std::size_t i) {
        auto& p = pts[i];
        if (!(p.x(0) * p.x(1) < 0)) return;
        MixedTerm m;
        m.nu = combo(NL.b1, NL.b2, p.coeffs[0], p.coeffs[1]);
        m.e1 = p.x(0);
        m.e2 = p.x(1);
        m.trace = static_cast<long long>(boost::multiprecision::numerator(ctx.F.trace(m.nu)));
        m.slot = (m.e1 < 0) ? 0 : 1;
        m.l1 = p.l1;
        long long s0 = 0;
        for (auto& dv : sigma_divisors(ctx, c, m.nu)) s0 += dv.chi;
        m.sigma0 = s0;
        if (s0 != 0) {
            mixed[i] = m;
            keep[i] = 1;
        }
    });
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (keep[i]) d.mixed[mixed[i].trace].push_back(mixed[i]);
    return d;
}

double DerivativeExpansion::a_coefficient(long long n, double y) const {
    auto it = mixed.find(n);
    if (it == mixed.end()) return 0;
    double v = 0;
    for (auto& m : it->second) {
        double nl = std::fabs(m.slot == 0 ? m.e1 : m.e2);
        v += 4.0 * m.sigma0 * beta_incomplete(0.0, 4 * kPi * y * nl);
    }
    return v;
}

double DerivativeExpansion::psi_mode(long long n, double y) const {
    double v = (n == 0) ? -0.25 * static_cast<double>(B) * y : 0.0;
    auto it = mixed.find(n);
    if (it == mixed.end()) return v;
    for (auto& m : it->second) v += y * m.sigma0 * std::exp(-2 * kPi * y * m.l1);
    return v;
}

double DerivativeExpansion::mixed_tail(double y) const {
    double D = (double)ctx.F.D;
    double Nc = static_cast<double>(c.norm());
    DecayWeight w;
    // |sigma| <= N(nu d) <= D L1^2 / 4; beta_0(t) <= e^-t log(1+1/t), |nu_l| >= N(c)/(D L1)
    w.amp = 4.0 * D / 4 * (1.0 + D / (4 * kPi * y * Nc)) * std::max(1.0, y);
    w.rate = 2 * kPi * y;
    w.degree = 3;
    return ball_tail_bound(nu_lattice(ctx, c).B, cutoff, w);
}

cplx eval_derivative(const DerivativeExpansion& d, cplx tau, double* tail) {
    const double x = tau.real(), y = tau.imag();
    if (!(y > 0)) throw std::domain_error("Im tau must be positive");
    cplx v = static_cast<double>(d.B) * std::log(y) + d.log_alpha.value() + d.A;
    for (auto& [n, j] : d.J) v -= j.log.value() * std::exp(-2 * kPi * n * y) * std::polar(1.0, 2 * kPi * x * n);
    for (auto& [n, terms] : d.mixed) {
        for (auto& m : terms) {
            double nl = std::fabs(m.slot == 0 ? m.e1 : m.e2);
            double b = beta_incomplete(0.0, 4 * kPi * y * nl);
            if (b == 0) continue;
            double mag = 4.0 * m.sigma0 * b * std::exp(-2 * kPi * y * n);
            v += mag * std::polar(1.0, 2 * kPi * x * n);
        }
    }
    if (tail) {
        // log J(n) <= 8 * #nu * #div * log N(nu d); crude polynomial envelope in n
        double D = (double)d.ctx.F.D, hol = 0;
        for (long long n = d.n_max + 1; n < d.n_max + 2000; ++n) {
            double t = 8.0 * (D * n) * (D * n * n / 4) * std::log(D * n * n / 4 + 2) * std::exp(-2 * kPi * n * y);
            hol += t;
            if (t < 1e-30) break;
        }
        *tail = hol + d.mixed_tail(y);
    }
    return v;
}

cplx psi_period_modes(const DerivativeExpansion& d, cplx tau) {
    const double x = tau.real(), y = tau.imag();
    cplx v = -0.25 * static_cast<double>(d.B) * y;
    for (auto& [n, terms] : d.mixed)
        for (auto& m : terms) v += y * m.sigma0 * std::exp(-2 * kPi * y * m.l1) * std::polar(1.0, 2 * kPi * x * n);
    return v;
}

FractionalIdeal conjugate_divisor(const FieldContext& ctx, const FractionalIdeal& c) {
    const Field& F = ctx.F;
    FractionalIdeal P = F.principal(QElem{Rational(ctx.p), 0});
    if (!F.divides(c, P)) throw std::invalid_argument("c does not divide p");
    return F.mul(P, F.inverse(c));
}

CuspZero cusp_zero_expansion(const DerivativeExpansion& d, long long p) {
    FieldContext ctx = d.ctx;
    ctx.p = p;
    FractionalIdeal cb = conjugate_divisor(ctx, d.c);
    CuspZero z{build_derivative(ctx, cb, d.n_max, d.cutoff), p, Rational(d.chi_c) / d.c.norm()};
    return z;
}

FunceqReport funceq_check(const EisensteinExpansion& e, double s) {
    FunceqReport r;
    const double y = 1.0;
    double dc = static_cast<double>(e.c.norm()) * (double)e.ctx.F.D;
    int chidc = e.chi_c() * e.chi_d();
    for (auto& t : e.terms) {
        if (t.divisors.empty()) continue;
        double lhs = std::pow(y, 2 * s) * t.sigma(-s) * k_weight_decayed(-s, y * t.e1) * k_weight_decayed(-s, y * t.e2);
        double rhs = chidc * std::pow(dc, 2 * s) * std::pow(y, -2 * s) * t.sigma(s) * k_weight_decayed(s, y * t.e1) *
                     k_weight_decayed(s, y * t.e2);
        double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
        r.max_residual = std::max(r.max_residual, std::fabs(lhs - rhs) / scale);
        ++r.checked;
    }
    return r;
}

bool funceq_exact(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu, int s_int) {
    const Field& F = ctx.F;
    auto divs = sigma_divisors(ctx, c, nu);
    Rational Nnu = F.norm(nu);
    int sgn = Nnu > 0 ? 1 : -1;
    Rational Nnudc = abs(Nnu) * Rational(F.D) * c.norm();
    int chidc = ctx.chi_of(c) * ctx.chi_of(F.different);
    DirichletPoly lhs, rhs;
    for (auto& d : divs) {
        lhs[Rational(1) / Rational(d.norm)] += d.chi;
        rhs[Rational(d.norm) / Nnudc] += (long long)sgn * chidc * d.chi;
    }
    auto clean = [](DirichletPoly& p) {
        for (auto it = p.begin(); it != p.end();) it = (it->second == 0) ? p.erase(it) : std::next(it);
    };
    clean(lhs);
    clean(rhs);
    if (lhs != rhs) return false;
    // evaluate both sides at the integer s: sum coeff * base^(-2s)
    Rational vl = 0, vr = 0;
    for (auto& d : divs) vl += d.chi * rational_pow(Rational(d.norm), 2 * (long long)s_int);
    Rational sig = 0;
    for (auto& d : divs) sig += d.chi * rational_pow(Rational(d.norm), -2 * (long long)s_int);
    vr = sgn * chidc * rational_pow(Nnudc, 2 * (long long)s_int) * sig;
    return vl == vr;
}

double modularity_check(const EisensteinExpansion& e, const Matrix2& g, cplx tau, double s) {
    if (g.a * g.d - g.b * g.c != 1) throw std::invalid_argument("matrix not in SL2(Z)");
    if (e.ctx.p != 0 && g.c % e.ctx.p != 0) throw std::invalid_argument("matrix not in Gamma_0(p)");
    cplx gt = ((double)g.a * tau + (double)g.b) / ((double)g.c * tau + (double)g.d);
    cplx j = (double)g.c * tau + (double)g.d;
    cplx lhs = eval_series(e, gt, s).value;
    cplx rhs = j * j * eval_series(e, tau, s).value;
    return std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
}

}  // namespace hl
