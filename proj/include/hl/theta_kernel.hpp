#pragma once
#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "hl/field_data.hpp"

namespace hl {

using cplx = std::complex<double>;

// coefficient of prod dt_k/t_k in the pullback of phi to the split torus, after v -> sqrt(y) v, t -> u t
double phi0_torus_pullback(const std::vector<double>& t, double u, const std::vector<double>& v,
                           const std::vector<double>& w, double y);
// same coefficient from the Hermite-sum expression with d = (1,...,1)
double phi0_torus_hermite(const std::vector<double>& t, double u, const std::vector<double>& v,
                          const std::vector<double>& w, double y);

// N = 2 point (x1, y1, u) and vector (v, w)
struct N2Sample {
    double x1 = 0, y1 = 1, u = 1;
    Eigen::Vector2d v = Eigen::Vector2d::Zero(), w = Eigen::Vector2d::Zero();
};

Eigen::Matrix2d g_of(double x1, double y1, double u);

// Components in the basis built from (dx1/2y1, dy1/2y1, du/2u):
// 2-forms in the order (x^y, x^u, y^u), 1-forms in the order (x, y, u).
struct N2Forms {
    std::array<double, 3> phi0{}, alpha0{};
    std::array<double, 3> phi{}, alpha{};  // times exp(-2 pi Q(v))
    std::array<cplx, 3> phi_hat{}, alpha_hat{};
    std::array<cplx, 3> alpha_hat_printed{};  // closed form as displayed in the source
    std::array<cplx, 3> alpha_hat_xyu_printed{};
};
N2Forms mq_n2_forms(const N2Sample& s);

// partial Fourier transform in w of phi (which = 0) or alpha (which = 1):
// int f(g, v, w') e(<w, w'>) dw' by the trapezoid rule in g-adapted coordinates
std::array<cplx, 3> numeric_partial_ft(const N2Sample& s, int which, double h = 0.05, double L = 7.5);

struct TransgressionResult {
    double residual = 0;  // max-norm of d alpha0 - y d/dy phi0 over the three 2-form components
    std::array<double, 3> d_alpha{}, y_dphi{};
};
// transgression at (x1, y1, u), vector (v, w) and modular height yt
TransgressionResult transgression_check(const N2Sample& s, double yt, double h);

enum class Kind { Phi, Psi };
enum class Model { Auto, Omega, OmegaPrime, Swapped };

// lattice pair sigma(ac) x sigma(a^-1 d^-1) with the duals needed for Poisson summation
struct ThetaLattice {
    Eigen::Matrix2d L1, L2;          // v-lattice, w-lattice
    Eigen::Matrix2d L1dual, L2dual;  // trace-dual lattices
    double covol1 = 0, covol2 = 0;
};
ThetaLattice theta_lattice(const LatticePair& lp);

struct ThetaValue {
    cplx value;
    double tail = 0;
    Model model = Model::Omega;
    std::size_t terms = 0;
};
// theta sum on the torus, t = (t1, t2) with u absorbed, kind phi or psi
ThetaValue theta_sum(const ThetaLattice& L, const std::array<double, 2>& t, cplx tau, Kind kind, double tol,
                     Model model = Model::Auto);

struct PeriodValue {
    cplx value;
    double quad_error = 0;
    double theta_tail = 0;
    double log_u_range = 0;
    int nodes = 0;
};
// sum_a chi(a) N(a)^{2s} int_{log u} Theta(u sqrt(r), u / sqrt(r)) u^{-4s} dlog u at fixed r
PeriodValue pushforward(const TorusData& td, double log_r, cplx tau, double s, Kind kind, double tol);
// the same integrated over log r in [0, 2 log eps) (periodic trapezoid)
PeriodValue torus_period(const TorusData& td, cplx tau, double s, Kind kind, double tol);

}  // namespace hl
