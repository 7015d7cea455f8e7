#include <doctest.h>

#include <cmath>
#include <random>

#include "hl/eisenstein.hpp"
#include "hl/theta_kernel.hpp"

using namespace hl;

namespace {

TorusData d12(const std::string& ideal) {
    Field F(12);
    auto G = narrow_class_group(F);
    auto chi = totally_odd_characters(F, G).at(0);
    return export_n2(F, G, chi, F.principal(F.parse(ideal)), 13);
}

}  // namespace

TEST_CASE("torus pullback") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.4, 2.5), un(-1.0, 1.0);
    for (int N : {1, 2, 3})
        for (int i = 0; i < 10; ++i) {
            std::vector<double> t(N), v(N), w(N);
            for (int k = 0; k < N; ++k) {
                t[k] = ut(rng);
                v[k] = un(rng);
                w[k] = un(rng);
            }
            double u = ut(rng), y = ut(rng);
            double a = phi0_torus_pullback(t, u, v, w, y), b = phi0_torus_hermite(t, u, v, w, y);
            CHECK(a == doctest::Approx(b).epsilon(1e-10));
        }
    // zero vector in the w-slot only leaves the Gaussian part; odd in v for N = 1
    std::vector<double> t{1.3}, v{0.4}, w{0.0}, mv{-0.4};
    CHECK(phi0_torus_pullback(t, 1.0, v, w, 1.0) == doctest::Approx(-phi0_torus_pullback(t, 1.0, mv, w, 1.0)));
}

TEST_CASE("partial Fourier transform") {
    N2Sample s;
    s.x1 = -0.2;
    s.y1 = 1.3;
    s.u = 0.8;
    s.v = Eigen::Vector2d(0.3, 0.5);
    s.w = Eigen::Vector2d(-0.6, 0.1);
    auto f = mq_n2_forms(s);
    for (int which = 0; which < 2; ++which) {
        auto num = numeric_partial_ft(s, which);
        const auto& ref = which == 0 ? f.phi_hat : f.alpha_hat;
        for (int k = 0; k < 3; ++k) CHECK(std::abs(num[k] - ref[k]) < 1e-8 * (1 + std::abs(ref[k])));
    }
    // Gaussian factor
    Eigen::Matrix2d g = g_of(s.x1, s.y1, s.u);
    CHECK(g.determinant() != 0);
}

TEST_CASE("transgression is second order") {
    N2Sample s;
    s.x1 = 0.1;
    s.y1 = 1.1;
    s.u = 1.3;
    s.v = Eigen::Vector2d(-0.5, 0.8);
    s.w = Eigen::Vector2d(0.7, 0.3);
    double r1 = transgression_check(s, 0.9, 1e-2).residual;
    double r2 = transgression_check(s, 0.9, 5e-3).residual;
    CHECK(std::log2(r1 / r2) == doctest::Approx(2.0).epsilon(0.1));
    CHECK(transgression_check(s, 0.9, 1e-4).residual < 1e-6);
}

TEST_CASE("theta sum models agree") {
    auto td = d12("4+sqrt3");
    auto L = theta_lattice(td.pairs.at(0));
    CHECK(std::fabs(L.L1.determinant()) == doctest::Approx(L.covol1));
    CHECK(std::fabs(L.L2.determinant()) == doctest::Approx(L.covol2));
    CHECK((L.L1.transpose() * L.L1dual).diagonal().isApprox(Eigen::Vector2d(1, 1), 1e-12));
    for (Kind kind : {Kind::Phi, Kind::Psi})
        for (std::array<double, 2> t : {std::array<double, 2>{1.0, 1.0}, std::array<double, 2>{0.6, 1.7}}) {
            cplx tau(0.2, 0.9);
            auto a = theta_sum(L, t, tau, kind, 1e-12, Model::Omega);
            auto b = theta_sum(L, t, tau, kind, 1e-12, Model::OmegaPrime);
            auto c = theta_sum(L, t, tau, kind, 1e-12, Model::Swapped);
            CHECK(std::abs(a.value - b.value) < 1e-9 * (1 + std::abs(a.value)));
            CHECK(std::abs(a.value - c.value) < 1e-9 * (1 + std::abs(a.value)));
        }
}

TEST_CASE("torus period against the Fourier series") {
    auto td = d12("4+sqrt3");
    auto e = build_expansion(td, 40.0);
    for (cplx tau : {cplx(0, 1), cplx(0.5, 1), cplx(0, 2)}) {
        auto p = torus_period(td, tau, 1.0, Kind::Phi, 1e-10);
        auto v = eval_series(e, tau, 1.0);
        CHECK_MESSAGE(std::abs(p.value - v.value) < 1e-6 * std::abs(v.value), "tau=" << tau);
        CHECK(std::abs(torus_period(td, tau, 0.0, Kind::Phi, 1e-11).value) < 1e-9);
    }
}

TEST_CASE("psi period against the Fourier modes") {
    for (std::string ideal : {"1", "4+sqrt3"}) {
        auto td = d12(ideal);
        auto d = build_derivative(td, 20, 40.0);
        for (cplx tau : {cplx(0.3, 1.25), cplx(0, 1), cplx(-0.4, 0.8)}) {
            double a = torus_period(td, tau, 0.0, Kind::Psi, 1e-11).value.real();
            double b = psi_period_modes(d, tau).real();
            CHECK_MESSAGE(std::fabs(a - b) < 1e-7 * std::max(1.0, std::fabs(b)), ideal << " tau=" << tau);
        }
    }
}

TEST_CASE("psi period under the Fricke involution") {
    auto td = d12("4+sqrt3");
    auto ctx = field_context(td);
    auto d = build_derivative(td, 4, 30.0);
    auto z = cusp_zero_expansion(d, 13);
    auto td0 = export_n2(ctx.F, ctx.G, ctx.chi, z.dexp.c, 13);
    const double f = static_cast<double>(z.psi_factor());
    for (cplx tau : {cplx(0.5, 3.0), cplx(-1.0, 4.0)}) {
        double lhs = torus_period(td, -1.0 / tau, 0.0, Kind::Psi, 1e-10).value.real();
        double rhs = f * torus_period(td0, tau / 13.0, 0.0, Kind::Psi, 1e-10).value.real();
        CHECK_MESSAGE(std::fabs(lhs - rhs) < 1e-6 * std::max(1.0, std::fabs(lhs)), "tau=" << tau);
    }
}
