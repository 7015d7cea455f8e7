#pragma once
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "hl/eisenstein.hpp"
#include "hl/theta_kernel.hpp"

namespace hl {

struct CuspData {
    std::map<long long, Rational> principal;  // n > 0 -> a(-n)
    Rational constant = 0;
    long long width = 1;
};

struct MaassInput {
    int weight = 0;
    long long p = 0;
    CuspData inf, zero;
    // q-expansion at infinity: sum_i q_inf[i] q^(q_offset + i)
    long long q_offset = -1;
    std::vector<BigInt> q_inf;
    // f(-1/tau) = zero_scale * sum_i q_zero[i] q^((zero_offset + i)/p)
    long long zero_offset = 1;
    Rational zero_scale = 1;
    std::vector<BigInt> q_zero;
    std::function<cplx(cplx)> eval;       // f(tau)
    std::function<cplx(cplx)> eval_zero;  // f(-1/tau)
    std::map<long long, cplx> minus;      // a^-(n), coefficients of beta_k(n,y) e(-n tau)
    bool weakly_holomorphic() const { return minus.empty(); }
};

cplx dedekind_eta(cplx tau);

// (eta(tau)/eta(p tau))^(24/(p-1)) for p in {2,3,5,7,13}
MaassInput hauptmodul(long long p, int n_max);
MaassInput scale(const MaassInput& f, long long d);
MaassInput add(const MaassInput& f, const MaassInput& g);

// coefficients of xi_k(f): n -> -conj(a^-(n))
std::map<long long, cplx> xi_operator(const MaassInput& f);

struct Kappa {
    Rational a0;          // a^+_r(f,0), multiplies A
    double A = 0;
    AlgebraicLog log_alpha;
    Rational factor = 1;  // chi(c)/N(c) at the cusp 0, 1 at infinity
    double value() const { return static_cast<double>(factor) * (static_cast<double>(a0) * A + log_alpha.value()); }
};

struct KappaPair {
    Kappa inf, zero;
    long long p = 0;
    double limit_term = 0;  // |sum a(-n) a(n,T)| at the supplied T
    double rhs(long long p) const { return inf.value() + (double)p * zero.value(); }
    AlgebraicLog alpha() const;  // combined algebraic number
};

KappaPair kappa_corrections(const MaassInput& f, const DerivativeExpansion& d, const CuspZero& z, double T = 50);

struct PeriodOptions {
    double Y0 = 1.25;   // top of the compact part at infinity
    double Y1 = 0.2;    // top of the compact strips at the cusp 0 (w coordinate)
    int nx = 16, ny = 16;
    int nx0 = 10, ny0 = 12;
    double theta_tol = 1e-9;
    double mode_cutoff = 30;
    std::vector<double> rho{1e-3, 2e-3};
};

struct RegularizedPeriod {
    double value = 0;  // Richardson over the T ladder
    std::vector<std::pair<double, double>> ladder;
    double ladder_change = 0;
    double rho_value = 0;
    double compact_inf = 0, compact_zero = 0;
    double continuity = 0;  // theta route vs Fourier modes at the junction
    double log_coefficient = 0;  // coefficient of log T that was subtracted
    int nodes = 0;
};

RegularizedPeriod regularized_period(const MaassInput& f, const TorusData& td, double T_max, double tol,
                                     const PeriodOptions& opt = {});

struct AdjointSample {
    cplx tau;
    cplx lhs, rhs;
    double residual = 0;
};
std::vector<AdjointSample> adjointness_check(const TorusData& td, const std::vector<cplx>& taus, double h);
// finite-difference lowering operator -2i y^2 d/d(tau bar) applied to F
cplx lowering_fd(const std::function<cplx(cplx)>& F, cplx tau, double h);

// a weight-k form given at infinity and through F(-1/tau) = tau^k zero_slash(tau)
struct CuspPair {
    std::function<cplx(cplx)> at_inf;
    std::function<cplx(cplx)> zero_slash;
};
struct PairingValue {
    cplx value;
    double y_cut = 0;
    int nodes = 0;
};
PairingValue petersson_pairing(const CuspPair& F, const CuspPair& g, int weight, long long p, double tol, double y_cut = 0);

// Gauss-Legendre nodes and weights on [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace hl
