#include <doctest.h>

#include <cmath>

#include "hl/lift.hpp"
#include "hl/parallel.hpp"

using namespace hl;

namespace {

TorusData d12(const std::string& ideal) {
    Field F(12);
    auto G = narrow_class_group(F);
    auto chi = totally_odd_characters(F, G).at(0);
    return export_n2(F, G, chi, F.principal(F.parse(ideal)), 13);
}

cplx q_series(const std::vector<BigInt>& c, long long offset, cplx tau, double scale = 1) {
    cplx v = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        v += static_cast<double>(c[i]) * std::exp(cplx(0, 2 * M_PI) * tau * ((offset + (long long)i) / scale));
    return v;
}

// eta(tau)^2 eta(11 tau)^2 and its image under tau -> -1/tau, up to tau^2
CuspPair level11() {
    CuspPair g;
    g.at_inf = [](cplx t) {
        cplx a = dedekind_eta(t), b = dedekind_eta(11.0 * t);
        return a * a * b * b;
    };
    g.zero_slash = [](cplx t) {
        cplx a = dedekind_eta(t), b = dedekind_eta(t / 11.0);
        return -a * a * b * b / 11.0;
    };
    return g;
}

// Petersson norm of the level 11 newform with the 1/[SL2(Z):Gamma0(11)] normalization
constexpr double kNorm11 = 0.0039083456;

}  // namespace

TEST_CASE("eta and hauptmoduln") {
    // eta(i) = Gamma(1/4) / (2 pi^(3/4))
    CHECK(std::abs(dedekind_eta(cplx(0, 1)) - std::tgamma(0.25) / (2 * std::pow(M_PI, 0.75))) < 1e-13);
    auto f = hauptmodul(13, 40);
    std::vector<long long> inf{1, -2, -1, 2, 1, 2}, zero{1, 2, 5, 10, 20, 36};
    for (std::size_t i = 0; i < inf.size(); ++i) {
        CHECK(f.q_inf.at(i) == inf[i]);
        CHECK(f.q_zero.at(i) == zero[i]);
    }
    CHECK(f.zero_scale == Rational(13));
    CHECK(f.inf.principal.at(1) == Rational(1));
    CHECK(f.inf.constant == Rational(-2));
    CHECK(f.weakly_holomorphic());
    for (cplx tau : {cplx(0.1, 1.0), cplx(-0.3, 0.7)}) {
        CHECK(std::abs(f.eval(tau) - q_series(f.q_inf, f.q_offset, tau)) < 1e-10);
        CHECK(std::abs(f.eval_zero(tau) - 13.0 / f.eval(tau / 13.0)) < 1e-9 * std::abs(f.eval_zero(tau)));
        CHECK(std::abs(f.eval_zero(tau) - f.eval(-1.0 / tau)) < 1e-8 * std::abs(f.eval_zero(tau)));
    }
    CHECK(std::abs(f.eval_zero(cplx(0.2, 3.0)) - 13.0 * q_series(f.q_zero, f.zero_offset, cplx(0.2, 3.0), 13)) < 1e-9);
    CHECK(hauptmodul(5, 10).q_inf.at(1) == -6);
    CHECK(hauptmodul(2, 10).q_inf.at(1) == -24);
    CHECK_THROWS(hauptmodul(11, 10));
}

TEST_CASE("xi operator") {
    auto f = hauptmodul(13, 20);
    CHECK(xi_operator(f).empty());
    MaassInput g = f;
    g.minus[1] = cplx(2, 1);
    g.minus[3] = cplx(0, -0.5);
    auto x = xi_operator(g);
    CHECK(x.at(1) == cplx(-2, 1));
    CHECK(x.at(3) == cplx(0, -0.5));
    auto x2 = xi_operator(add(g, scale(g, 3)));
    for (auto& [n, v] : x) CHECK(std::abs(x2.at(n) - 4.0 * v) < 1e-15);
}

TEST_CASE("constant term corrections") {
    auto td = d12("4+sqrt3");
    auto f = hauptmodul(13, 30);
    auto d = build_derivative(td, 2, 30.0);
    auto z = cusp_zero_expansion(d, 13);
    auto k = kappa_corrections(f, d, z, 50);
    CHECK(k.limit_term < 1e-15);
    CHECK(k.rhs(13) == doctest::Approx(1.8891648715).epsilon(1e-9));
    auto k3 = kappa_corrections(scale(f, 3), d, z, 50);
    CHECK(k3.alpha() == k.alpha().scaled(Rational(3)));
    CHECK(k3.rhs(13) == doctest::Approx(3 * k.rhs(13)).epsilon(1e-12));
    auto d0 = build_derivative(td, 0, 30.0);
    CHECK_THROWS_AS(kappa_corrections(f, d0, cusp_zero_expansion(d0, 13), 50), std::out_of_range);
}

TEST_CASE("lowering operator") {
    for (cplx tau : {cplx(0.2, 0.7), cplx(-1.0, 2.5)}) {
        auto ly = lowering_fd([](cplx t) { return cplx(std::log(t.imag()), 0); }, tau, 1e-3);
        CHECK(std::abs(ly - tau.imag()) < 1e-9);
        auto lh = lowering_fd([](cplx t) { return std::exp(cplx(0, 2 * M_PI) * t); }, tau, 1e-3);
        CHECK(std::abs(lh) < 1e-9);
    }
}

TEST_CASE("adjointness") {
    set_thread_count(4);
    auto r = adjointness_check(d12("4+sqrt3"), {cplx(0.25, 1.1)}, 1e-3);
    set_thread_count(1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].residual < 1e-4);
    CHECK_THROWS(adjointness_check(d12("4+sqrt3"), {cplx(0, 1)}, 0.0));
    CHECK_THROWS(adjointness_check(d12("4+sqrt3"), {cplx(0, 1)}, 0.1));
}

TEST_CASE("regularized period, reduced grid") {
    set_thread_count(4);
    PeriodOptions opt;
    opt.nx = opt.ny = opt.nx0 = opt.ny0 = 8;
    opt.theta_tol = 1e-7;
    auto td = d12("4+sqrt3");
    auto f = hauptmodul(13, 30);
    auto r = regularized_period(f, td, 32, 1e-5, opt);
    auto r2 = regularized_period(scale(f, 2), td, 32, 1e-5, opt);
    set_thread_count(1);
    CHECK(-4 * r.value == doctest::Approx(1.8891648715).epsilon(1e-3));
    CHECK(r2.value == doctest::Approx(2 * r.value).epsilon(1e-10));
    CHECK(std::fabs(r.rho_value - r.value) < 1e-4);
    CHECK(r.continuity < 1e-6);
    CHECK(r.ladder.size() >= 2);
}

TEST_CASE("Petersson pairing") {
    auto g = level11();
    auto gg = petersson_pairing(g, g, 2, 11, 1e-11);
    CHECK(gg.value.real() / 12 == doctest::Approx(kNorm11).epsilon(1e-6));
    CHECK(std::fabs(gg.value.imag()) < 1e-12);
    CuspPair g2{[&](cplx t) { return 2.0 * g.at_inf(t); }, [&](cplx t) { return 2.0 * g.zero_slash(t); }};
    CHECK(petersson_pairing(g2, g, 2, 11, 1e-11).value.real() == doctest::Approx(2 * gg.value.real()).epsilon(1e-10));
    CuspPair zero{[](cplx) { return cplx(0); }, [](cplx) { return cplx(0); }};
    CHECK(std::abs(petersson_pairing(zero, g, 2, 11, 1e-11).value) == 0.0);
    auto longer = petersson_pairing(g, g, 2, 11, 1e-11, 2 * gg.y_cut);
    CHECK(longer.value.real() == doctest::Approx(gg.value.real()).epsilon(1e-10));
    CuspPair one{[](cplx) { return cplx(1); }, [](cplx) { return cplx(1); }};
    CHECK_THROWS_AS(petersson_pairing(g, one, 2, 11, 1e-11), std::invalid_argument);
}
