#include "hl/theta_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hl/parallel.hpp"
#include "hl/special_fn.hpp"

namespace hl {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I1(0.0, 1.0);

void check_sizes(const std::vector<double>& t, const std::vector<double>& v, const std::vector<double>& w) {
    if (t.empty() || t.size() != v.size() || t.size() != w.size()) throw std::invalid_argument("dimension mismatch");
    for (double x : t)
        if (!(x > 0)) throw std::domain_error("t must be positive");
}

// points B m with |diag(scale) (B m) - center| <= R
template <class F>
void enumerate(const Eigen::Matrix2d& B, const Eigen::Vector2d& scale, const Eigen::Vector2d& center, double R, F&& emit) {
    Eigen::Matrix2d S = scale.asDiagonal() * B;
    Eigen::Matrix2d Si = S.inverse();
    Eigen::Vector2d m0 = Si * center;
    double K0 = R * Si.row(0).norm(), K1 = R * Si.row(1).norm();
    long long lo0 = (long long)std::ceil(m0(0) - K0), hi0 = (long long)std::floor(m0(0) + K0);
    long long lo1 = (long long)std::ceil(m0(1) - K1), hi1 = (long long)std::floor(m0(1) + K1);
    for (long long i = lo0; i <= hi0; ++i)
        for (long long j = lo1; j <= hi1; ++j) {
            Eigen::Vector2d p = B * Eigen::Vector2d((double)i, (double)j);
            Eigen::Vector2d q = scale.cwiseProduct(p) - center;
            if (q.squaredNorm() <= R * R) emit(p);
        }
}

struct Raw {
    std::array<double, 3> phi, alpha;
};

// phi and alpha with gaussian exp(-pi |g^-1 v|^2 - pi |g^t w|^2) (rapidly decreasing versions) or
// the zero versions with exp(-pi |g^-1 v - g^t w|^2), in the (x, y, u/2u) basis
Raw forms_at(const Eigen::Matrix2d& g, const Eigen::Vector2d& v, const Eigen::Vector2d& w, bool zero) {
    Eigen::Vector2d a = g.inverse() * v, b = g.transpose() * w;
    Eigen::Vector2d P = std::sqrt(kPi) * (a + b), M = a - b;
    double E = zero ? std::exp(-kPi * M.squaredNorm()) : std::exp(-kPi * (a.squaredNorm() + b.squaredNorm()));
    Raw r;
    double f = E / (4 * kPi);
    r.phi = {f * (-4 * (P(0) * P(0) + P(1) * P(1)) + 4), 2 * f * 4 * (P(1) * P(1) - P(0) * P(0)), 2 * f * 8 * P(0) * P(1)};
    double e = -E / (4 * std::sqrt(kPi));
    r.alpha = {e * (2 * M(0) * P(0) - 2 * M(1) * P(1)), e * (-2 * M(0) * P(1) - 2 * M(1) * P(0)),
               2 * e * (2 * M(0) * P(1) - 2 * M(1) * P(0))};
    return r;
}

}  // namespace

double phi0_torus_pullback(const std::vector<double>& t, double u, const std::vector<double>& v,
                           const std::vector<double>& w, double y) {
    check_sizes(t, v, w);
    if (!(u > 0) || !(y > 0)) throw std::domain_error("u and y must be positive");
    double p = 1, sy = std::sqrt(y);
    for (std::size_t k = 0; k < t.size(); ++k) {
        double a = sy * v[k] / (u * t[k]), b = sy * w[k] * u * t[k];
        p *= (a + b) * std::exp(-kPi * (a * a + b * b));
    }
    return p;
}

double phi0_torus_hermite(const std::vector<double>& t, double u, const std::vector<double>& v,
                          const std::vector<double>& w, double y) {
    check_sizes(t, v, w);
    const std::size_t N = t.size();
    double sy = std::sqrt(y), q = 0;
    std::vector<double> arg(N);
    for (std::size_t k = 0; k < N; ++k) {
        double a = sy * v[k] / (u * t[k]), b = sy * w[k] * u * t[k];
        arg[k] = std::sqrt(kPi) * (a + b);
        q += a * a + b * b;
    }
    MultiIndex d{std::vector<int>(N, 1)};
    return std::exp(-kPi * q) * multi_hermite(d, arg) / (std::pow(2.0, (double)N) * std::pow(kPi, N / 2.0));
}

Eigen::Matrix2d g_of(double x1, double y1, double u) {
    if (!(y1 > 0) || !(u > 0)) throw std::domain_error("y1 and u must be positive");
    Eigen::Matrix2d g;
    g << std::sqrt(y1), x1 / std::sqrt(y1), 0, 1 / std::sqrt(y1);
    return g * u;
}

N2Forms mq_n2_forms(const N2Sample& s) {
    Eigen::Matrix2d g = g_of(s.x1, s.y1, s.u);
    N2Forms out;
    Raw z = forms_at(g, s.v, s.w, true), r = forms_at(g, s.v, s.w, false);
    out.phi0 = z.phi;
    out.alpha0 = z.alpha;
    out.phi = r.phi;
    out.alpha = r.alpha;
    Eigen::Matrix2d gi = g.inverse();
    Eigen::Vector2cd Z = gi.cast<cplx>() * (I1 * s.v.cast<cplx>() + s.w.cast<cplx>());
    double G = std::exp(-kPi * ((gi * s.v).squaredNorm() + (gi * s.w).squaredNorm()));
    double det = g.determinant();
    cplx e = (I1 * I1) / det * G;
    cplx z1 = std::conj(Z(0)), z2 = std::conj(Z(1));
    out.phi_hat = {e * (-z1 * z1 - z2 * z2), 2.0 * e * (-z1 * z1 + z2 * z2), 2.0 * e * (2.0 * z1 * z2)};
    cplx ea = -(I1 * I1) / det * G;
    cplx Z1 = Z(0), Z2 = Z(1);
    cplx c0 = (std::norm(Z1) + 1 / (2 * kPi)) - (std::norm(Z2) + 1 / (2 * kPi));
    cplx c1 = -(Z1 * std::conj(Z2)) - (Z2 * std::conj(Z1));
    cplx c2 = Z1 * std::conj(Z2) - Z2 * std::conj(Z1);
    out.alpha_hat_printed = {ea * c0, ea * c1, 2.0 * ea * c2};
    for (int k = 0; k < 3; ++k) out.alpha_hat[k] = -0.5 * out.alpha_hat_printed[k];
    Eigen::Matrix2d g1i = g_of(s.x1, s.y1, 1.0).inverse();
    Eigen::Vector2cd W = g1i.cast<cplx>() * (I1 * s.v.cast<cplx>() + s.w.cast<cplx>());
    cplx X = std::conj(W(0)) * W(1);
    double ex = std::exp(-kPi * (std::norm(W(0)) + std::norm(W(1))) / (s.u * s.u)) * std::pow(s.u, -4);
    out.alpha_hat_xyu_printed = {ex * (std::norm(W(0)) - std::norm(W(1))), -2 * ex * X.real(), 2.0 * I1 * ex * X.imag()};
    return out;
}

std::array<cplx, 3> numeric_partial_ft(const N2Sample& s, int which, double h, double L) {
    if (which != 0 && which != 1) throw std::invalid_argument("which must be 0 (phi) or 1 (alpha)");
    Eigen::Matrix2d g = g_of(s.x1, s.y1, s.u);
    Eigen::Matrix2d gTi = g.transpose().inverse();
    Eigen::Vector2d k = g.inverse() * s.w;  // e(<w, g^-T xi>) = e(<g^-1 w, xi>)
    int n = (int)std::ceil(L / h);
    std::size_t rows = 2 * n + 1;
    std::vector<std::array<cplx, 3>> part(rows);
    parallel_for(rows, [&](std::size_t i) {
        std::array<cplx, 3> acc{};
        double xi0 = ((long long)i - n) * h;
        for (int j = -n; j <= n; ++j) {
            Eigen::Vector2d xi(xi0, j * h);
            Eigen::Vector2d wp = gTi * xi;
            Raw r = forms_at(g, s.v, wp, false);
            cplx ph = std::polar(1.0, 2 * kPi * k.dot(xi));
            auto& f = which == 0 ? r.phi : r.alpha;
            for (int c = 0; c < 3; ++c) acc[c] += f[c] * ph;
        }
        part[i] = acc;
    });
    std::array<cplx, 3> tot{};
    for (auto& p : part)
        for (int c = 0; c < 3; ++c) tot[c] += p[c];
    double jac = h * h / std::fabs(g.determinant());
    for (auto& c : tot) c *= jac;
    return tot;
}

TransgressionResult transgression_check(const N2Sample& s, double yt, double h) {
    // coordinate components of alpha0 at (x, y, u): basis dx/2y, dy/2y, du/2u
    auto coords = [&](double x, double y, double u) {
        Raw r = forms_at(g_of(x, y, u), std::sqrt(yt) * s.v, std::sqrt(yt) * s.w, true);
        return std::array<double, 3>{r.alpha[0] / (2 * y), r.alpha[1] / (2 * y), r.alpha[2] / (2 * u)};
    };
    double X[3] = {s.x1, s.y1, s.u};
    std::array<std::array<double, 3>, 3> d{};  // d[i][j] = d alpha_j / d X_i
    for (int i = 0; i < 3; ++i) {
        double Xp[3] = {X[0], X[1], X[2]}, Xm[3] = {X[0], X[1], X[2]};
        Xp[i] += h;
        Xm[i] -= h;
        auto ap = coords(Xp[0], Xp[1], Xp[2]), am = coords(Xm[0], Xm[1], Xm[2]);
        for (int j = 0; j < 3; ++j) d[i][j] = (ap[j] - am[j]) / (2 * h);
    }
    TransgressionResult out;
    out.d_alpha = {d[0][1] - d[1][0], d[0][2] - d[2][0], d[1][2] - d[2][1]};
    Eigen::Matrix2d g = g_of(s.x1, s.y1, s.u);
    double hy = h * yt;
    auto fp = forms_at(g, std::sqrt(yt + hy) * s.v, std::sqrt(yt + hy) * s.w, true).phi;
    auto fm = forms_at(g, std::sqrt(yt - hy) * s.v, std::sqrt(yt - hy) * s.w, true).phi;
    std::array<double, 3> F;
    for (int j = 0; j < 3; ++j) F[j] = yt * (fp[j] - fm[j]) / (2 * hy);
    double y = s.y1, u = s.u;
    out.y_dphi = {F[0] / (4 * y * y), F[1] / (4 * y * u), F[2] / (4 * y * u)};
    for (int j = 0; j < 3; ++j) out.residual = std::max(out.residual, std::fabs(out.d_alpha[j] - out.y_dphi[j]));
    return out;
}

ThetaLattice theta_lattice(const LatticePair& lp) {
    ThetaLattice L;
    L.L1 = lp.lattice_ac;
    L.L2 = lp.lattice_dual;
    L.L1dual = L.L1.inverse().transpose();
    L.L2dual = L.L2.inverse().transpose();
    L.covol1 = std::fabs(L.L1.determinant());
    L.covol2 = std::fabs(L.L2.determinant());
    return L;
}

namespace {

ThetaValue theta_omega(const ThetaLattice& L, const std::array<double, 2>& t, cplx tau, Kind kind, double R) {
    const double x = tau.real(), y = tau.imag(), sy = std::sqrt(y);
    struct Pt {
        Eigen::Vector2d p;
        double a0, a1, g;
    };
    std::vector<Pt> V, W;
    enumerate(L.L1, Eigen::Vector2d(sy / t[0], sy / t[1]), Eigen::Vector2d::Zero(), R, [&](const Eigen::Vector2d& p) {
        double a0 = sy * p(0) / t[0], a1 = sy * p(1) / t[1];
        V.push_back({p, a0, a1, std::exp(-kPi * (a0 * a0 + a1 * a1))});
    });
    enumerate(L.L2, Eigen::Vector2d(sy * t[0], sy * t[1]), Eigen::Vector2d::Zero(), R, [&](const Eigen::Vector2d& p) {
        double b0 = sy * p(0) * t[0], b1 = sy * p(1) * t[1];
        W.push_back({p, b0, b1, std::exp(-kPi * (b0 * b0 + b1 * b1))});
    });
    cplx acc = 0;
    for (auto& a : V) {
        cplx row = 0;
        for (auto& b : W) {
            double amp = (kind == Kind::Phi) ? (a.a0 + b.a0) * (a.a1 + b.a1) : 0.5 * y * (a.a0 * a.a1 - b.a0 * b.a1);
            if (amp == 0) continue;
            double q = a.p.dot(b.p);
            row += amp * b.g * (x == 0 ? cplx(1, 0) : std::polar(1.0, 2 * kPi * x * q));
        }
        acc += a.g * row;
    }
    ThetaValue out;
    out.value = acc;
    out.model = Model::Omega;
    out.terms = V.size() * W.size();
    double pref = (kind == Kind::Phi) ? 1.0 : 0.5 * y;
    out.tail = pref * (double)(out.terms + V.size() + W.size() + 1) * std::pow(1 + R * R, 2) * std::exp(-kPi * R * R);
    return out;
}

// Poisson summation in w: sum over v in L1 and m in dual(L2)
ThetaValue theta_omega_prime(const Eigen::Matrix2d& L1, const Eigen::Matrix2d& L2dual, double covol2,
                             const std::array<double, 2>& t, cplx tau, Kind kind, double R) {
    const double x = tau.real(), y = tau.imag(), sy = std::sqrt(y);
    cplx acc = 0;
    std::size_t terms = 0;
    double maxpref = 0;
    std::vector<Eigen::Vector2d> V;
    enumerate(L1, Eigen::Vector2d(sy / t[0], sy / t[1]), Eigen::Vector2d::Zero(), R,
              [&](const Eigen::Vector2d& p) { V.push_back(p); });
    Eigen::Vector2d sc(1 / (sy * t[0]), 1 / (sy * t[1]));
    for (auto& v : V) {
        Eigen::Vector2d ctr = sc.cwiseProduct(x * v);
        enumerate(L2dual, sc, ctr, R, [&](const Eigen::Vector2d& m) {
            cplx z0 = v(0) * tau - m(0), z1 = v(1) * tau - m(1);
            double e = std::exp(-kPi * (std::norm(z0) / (y * t[0] * t[0]) + std::norm(z1) / (y * t[1] * t[1])));
            if (kind == Kind::Phi) {
                acc += (I1 * std::conj(z0) / (t[0] * t[0] * y)) * (I1 * std::conj(z1) / (t[1] * t[1] * y)) * e;
            } else {
                double base = e / (y * t[0] * t[1]);
                double pa = (sy * v(0) / t[0]) * (sy * v(1) / t[1]);
                cplx pb = (I1 * (x * v(0) - m(0)) / (sy * t[0])) * (I1 * (x * v(1) - m(1)) / (sy * t[1]));
                acc += 0.5 * y * (pa - pb) * base;
            }
            ++terms;
        });
    }
    maxpref = (kind == Kind::Phi) ? 1.0 / (y * y * t[0] * t[0] * t[1] * t[1]) : 0.5 / (t[0] * t[1]);
    ThetaValue out;
    out.value = acc / covol2;
    out.terms = terms;
    out.tail = maxpref / covol2 * (double)(terms + V.size() + 1) * std::pow(1 + R * R, 2) * std::exp(-kPi * R * R);
    return out;
}

}  // namespace

ThetaValue theta_sum(const ThetaLattice& L, const std::array<double, 2>& t, cplx tau, Kind kind, double tol, Model model) {
    const double y = tau.imag();
    if (!(y > 0)) throw std::domain_error("Im tau must be positive");
    if (!(t[0] > 0 && t[1] > 0)) throw std::domain_error("t must be positive");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
    double R = std::sqrt(std::log(1.0 / tol) / kPi + 3.0);
    double tt = t[0] * t[1], A = kPi * R * R;
    if (model == Model::Auto) {
        double nv = A * tt / (y * L.covol1) + 1, nw = A / (y * tt * L.covol2) + 1;
        double n_omega = nv * nw;
        double n_prime = nv * (A * y * tt * L.covol2 + 1);
        double n_swap = nw * (A * y * L.covol1 / tt + 1);
        model = Model::Omega;
        double best = n_omega;
        if (n_prime < best) {
            best = n_prime;
            model = Model::OmegaPrime;
        }
        if (n_swap < best) model = Model::Swapped;
    }
    ThetaValue out;
    if (model == Model::Omega) {
        out = theta_omega(L, t, tau, kind, R);
    } else if (model == Model::OmegaPrime) {
        out = theta_omega_prime(L.L1, L.L2dual, L.covol2, t, tau, kind, R);
    } else {
        std::array<double, 2> ti{1 / t[0], 1 / t[1]};
        out = theta_omega_prime(L.L2, L.L1dual, L.covol1, ti, tau, kind, R);
        if (kind == Kind::Psi) out.value = -out.value;
    }
    out.model = model;
    return out;
}

namespace {

struct Integrand {
    const TorusData& td;
    std::vector<ThetaLattice> lat;
    std::vector<double> weight;
    cplx tau;
    double s;
    Kind kind;
    double tol;
    Integrand(const TorusData& td_, cplx tau_, double s_, Kind kind_, double tol_)
        : td(td_), tau(tau_), s(s_), kind(kind_), tol(tol_) {
        if (td.N != 2) throw std::invalid_argument("torus periods are implemented for N = 2");
        for (auto& lp : td.pairs) {
            lat.push_back(theta_lattice(lp));
            weight.push_back(lp.chi * std::pow(static_cast<double>(lp.norm_a), 2 * s));
        }
    }
    // value and theta tail at (log u, log r)
    std::pair<cplx, double> operator()(double lu, double lr) const {
        std::array<double, 2> t{std::exp(lu + lr / 2), std::exp(lu - lr / 2)};
        cplx v = 0;
        double tail = 0;
        double f = std::exp(-4 * s * lu);
        for (std::size_t i = 0; i < lat.size(); ++i) {
            ThetaValue th = theta_sum(lat[i], t, tau, kind, tol);
            v += weight[i] * th.value;
            tail += std::fabs(weight[i]) * th.tail;
        }
        return {v * f, tail * f};
    }
};

struct Grid {
    double lo, h;
    int nu, nr;
    double period;
};

// evaluates the grid; returns fine sum, coarse (every other node) sum and tail mass
struct GridResult {
    cplx fine, coarse;
    double tail;
    int nodes;
};

GridResult eval_grid(const Integrand& F, const Grid& G) {
    std::size_t n = (std::size_t)G.nu * G.nr;
    std::vector<cplx> val(n);
    std::vector<double> tl(n);
    parallel_for(n, [&](std::size_t k) {
        int i = (int)(k / G.nu), j = (int)(k % G.nu);
        double lr = i * G.period / G.nr;
        double lu = G.lo + j * G.h;
        auto r = F(lu, lr);
        val[k] = r.first;
        tl[k] = r.second;
    });
    GridResult out{0, 0, 0, (int)n};
    double hr = G.period / G.nr;
    for (int i = 0; i < G.nr; ++i) {
        cplx rowf = 0, rowc = 0;
        for (int j = 0; j < G.nu; ++j) {
            std::size_t k = (std::size_t)i * G.nu + j;
            rowf += val[k];
            out.tail += tl[k] * G.h * hr;
            if (i % 2 == 0 && j % 2 == 0) rowc += val[k];
        }
        out.fine += rowf;
        out.coarse += rowc;
    }
    out.fine *= G.h * hr;
    out.coarse *= 4 * G.h * hr;
    return out;
}

// outward march in log u until the integrand is negligible at the given log r samples
std::pair<double, double> u_range(const Integrand& F, const std::vector<double>& lrs, double tol) {
    auto mag = [&](double lu) {
        double m = 0;
        for (double lr : lrs) m = std::max(m, std::abs(F(lu, lr).first));
        return m;
    };
    double step = 0.25, floor_v = tol * 1e-3;
    double hi = 0, lo = 0;
    int quiet = 0;
    for (hi = 0.5; hi < 12; hi += step) {
        quiet = mag(hi) < floor_v ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    quiet = 0;
    for (lo = -0.5; lo > -12; lo -= step) {
        quiet = mag(lo) < floor_v ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    return {lo, hi};
}

}  // namespace

PeriodValue pushforward(const TorusData& td, double log_r, cplx tau, double s, Kind kind, double tol) {
    Integrand F(td, tau, s, kind, tol * 1e-2);
    auto [lo, hi] = u_range(F, {log_r}, tol);
    double h = 0.2;
    cplx prev = 0;
    PeriodValue out;
    for (int it = 0; it < 8; ++it) {
        int nu = (int)std::ceil((hi - lo) / h) + 1;
        Grid G{lo, (hi - lo) / (nu - 1), nu, 1, 1.0};
        std::vector<cplx> val(nu);
        std::vector<double> tl(nu);
        parallel_for((std::size_t)nu, [&](std::size_t j) {
            auto r = F(G.lo + j * G.h, log_r);
            val[j] = r.first;
            tl[j] = r.second;
        });
        cplx sum = 0;
        double tail = 0;
        for (int j = 0; j < nu; ++j) {
            sum += val[j];
            tail += tl[j];
        }
        sum *= G.h;
        out.value = sum;
        out.theta_tail = tail * G.h;
        out.nodes = nu;
        out.log_u_range = hi - lo;
        if (it > 0) {
            out.quad_error = std::abs(sum - prev);
            if (out.quad_error < tol) return out;
        }
        prev = sum;
        h /= 2;
    }
    return out;
}

PeriodValue torus_period(const TorusData& td, cplx tau, double s, Kind kind, double tol) {
    Integrand F(td, tau, s, kind, tol * 1e-2);
    double period = 2 * td.eps_log();
    auto [lo, hi] = u_range(F, {0.0, period / 4, period / 2, 3 * period / 4}, tol);
    int nr = 16;
    double h = 0.15;
    PeriodValue out;
    cplx prev = 0;
    bool have_prev = false;
    for (int it = 0; it < 5; ++it) {
        int nu = 2 * (int)std::ceil((hi - lo) / (2 * h)) + 1;
        Grid G{lo, (hi - lo) / (nu - 1), nu, nr, period};
        GridResult r = eval_grid(F, G);
        out.value = r.fine;
        out.theta_tail = r.tail;
        out.nodes = r.nodes;
        out.log_u_range = hi - lo;
        out.quad_error = std::abs(r.fine - r.coarse);
        if (have_prev) out.quad_error = std::min(out.quad_error, std::abs(r.fine - prev));
        if (out.quad_error < tol) return out;
        prev = r.fine;
        have_prev = true;
        nr *= 2;
        h /= 2;
    }
    return out;
}

}  // namespace hl
