#include <doctest.h>

#include <cmath>

#include "hl/eisenstein.hpp"
#include "hl/parallel.hpp"

using namespace hl;

namespace {

TorusData d12(const std::string& ideal) {
    Field F(12);
    auto G = narrow_class_group(F);
    auto chi = totally_odd_characters(F, G).at(0);
    return export_n2(F, G, chi, F.principal(F.parse(ideal)), 13);
}

}  // namespace

TEST_CASE("divisor sums") {
    auto td = d12("4+sqrt3");
    auto ctx = field_context(td);
    const Field& F = ctx.F;
    auto c = F.principal(F.parse("sqrt3"));
    for (double s : {0.0, 0.3, 1.0, -0.7})
        CHECK(sigma_div(ctx, c, F.parse("1/2"), s) == doctest::Approx(-std::pow(3.0, -2 * s)));
    CHECK(sigma_divisors(ctx, c, F.parse("1/4")).empty());
    CHECK(sigma_divisors(ctx, c, QElem{}).empty());
    // the polynomial and the direct sum agree
    for (auto nu : {F.parse("1/2"), F.parse("2+sqrt3"), F.parse("7/2+3sqrt3/2")}) {
        auto poly = sigma_poly(ctx, ctx.c, nu);
        double v = 0;
        for (auto& [base, coeff] : poly) v += coeff * std::pow(static_cast<double>(base), -2 * 0.4);
        CHECK(v == doctest::Approx(sigma_div(ctx, ctx.c, nu, 0.4)));
    }
}

TEST_CASE("algebraic logs") {
    auto a = AlgebraicLog::of(Rational(12), Rational(1));
    a.add(Rational(3), Rational(-1));
    CHECK(a.is_rational());
    CHECK(a.to_rational() == Rational(4));
    CHECK(a.factors().size() == 1);
    CHECK(a.value() == doctest::Approx(std::log(4.0)));
    auto b = a.scaled(Rational(1, 3));
    CHECK_FALSE(b.is_rational());
    CHECK_THROWS(b.to_rational());
    CHECK(b.value() == doctest::Approx(std::log(4.0) / 3));
    AlgebraicLog z;
    z.add(b, Rational(-1)).add(b);
    CHECK(z == AlgebraicLog());
    CHECK(z.str() == "1");
}

TEST_CASE("vanishing at s = 0") {
    for (std::string ideal : {"1", "4+sqrt3"}) {
        auto e = build_expansion(d12(ideal), 30.0);
        for (cplx tau : {cplx(0, 1), cplx(-0.2, 0.6), cplx(0.45, 2.5)}) CHECK(std::abs(eval_series(e, tau, 0.0).value) < 1e-12);
        CHECK(std::abs(eval_series(e, cplx(0.1, 1.3), 1.0).value) > 1e-3);
    }
}

TEST_CASE("series against direct lattice sum") {
    auto td = d12("4+sqrt3");
    auto e = build_expansion(td, 40.0);
    for (cplx tau : {cplx(0, 1), cplx(0.3, 1.2)}) {
        auto d = direct_lattice_eval(td, tau, 1.0, 4000.0);
        auto v = eval_series(e, tau, 1.0);
        CHECK_MESSAGE(std::abs(d.value - v.value) < 1e-6 * std::abs(v.value) + d.tail_estimate, "tau=" << tau);
    }
}

TEST_CASE("functional equation of coefficients") {
    auto td = d12("4+sqrt3");
    auto ctx = field_context(td);
    const Field& F = ctx.F;
    auto [b1, b2] = F.basis(F.mul(ctx.c, F.inverse(F.different)));
    for (int m = -4; m <= 4; ++m)
        for (int n = -4; n <= 4; ++n) {
            if (m == 0 && n == 0) continue;
            QElem nu{b1.a * m + b2.a * n, b1.b * m + b2.b * n};
            for (int s : {-2, 0, 1, 3}) CHECK_MESSAGE(funceq_exact(ctx, ctx.c, nu, s), F.str(nu) << " s=" << s);
        }
    auto e = build_expansion(td, 25.0);
    auto r = funceq_check(e, 0.35);
    CHECK(r.checked > 0);
    CHECK(r.max_residual < 1e-10);
}

TEST_CASE("modularity") {
    auto e = build_expansion(d12("4+sqrt3"), 60.0);
    for (double s : {0.5, 1.0}) {
        CHECK(modularity_check(e, Matrix2{1, 1, 0, 1}, cplx(0.1, 0.9), s) < 1e-8);
        CHECK(modularity_check(e, Matrix2{1, 0, 13, 1}, cplx(-1, 1) / 13.0, s) < 1e-5);
    }
}

TEST_CASE("derivative coefficients") {
    auto td = d12("4+sqrt3");
    auto ctx = field_context(td);
    auto J1 = j_coefficient(ctx, ctx.c, 1);
    CHECK(J1.value == Rational(1));
    auto J0 = j_coefficient(ctx, ctx.F.principal(ctx.F.parse("1")), 1);
    CHECK(J0.value == Rational(1, 429981696));
    CHECK(J0.log.to_rational() == J0.value);
    auto d = build_derivative(td, 4, 30.0);
    CHECK(d.L0 == Rational(1, 6));
    CHECK(d.B == Rational(-2, 3));
    CHECK(d.A == doctest::Approx(-0.9179015).epsilon(1e-6));
    CHECK(d.lambda_prime0 == doctest::Approx(-0.229475).epsilon(1e-5));
    CHECK(d.chi_c == -d.chi_d);
    auto cb = conjugate_divisor(ctx, ctx.c);
    CHECK(cb.norm() == Rational(13));
    auto cz = cusp_zero_expansion(d, 13);
    CHECK(cz.psi_factor() == cz.e_factor * 13);
    // non-vanishing class
    CHECK_THROWS(build_derivative(ctx, ctx.F.principal(ctx.F.parse("sqrt3")), 4, 30.0));
}

TEST_CASE("derivative against a finite difference") {
    auto td = d12("1");
    auto d = build_derivative(td, 6, 40.0);
    auto e = build_expansion(td, 40.0);
    const double h = 1e-4;
    for (cplx tau : {cplx(0, 1.1), cplx(0.25, 0.9)}) {
        cplx fd = (eval_series(e, tau, h).value - eval_series(e, tau, -h).value) / (2 * h);
        CHECK(std::abs(eval_derivative(d, tau) - fd) < 1e-4 * std::abs(fd));
    }
}

TEST_CASE("thread count does not change results") {
    auto td = d12("4+sqrt3");
    set_thread_count(1);
    auto e1 = build_expansion(td, 30.0);
    auto v1 = eval_series(e1, cplx(0.2, 0.8), 0.6).value;
    set_thread_count(4);
    auto e4 = build_expansion(td, 30.0);
    auto v4 = eval_series(e4, cplx(0.2, 0.8), 0.6).value;
    set_thread_count(1);
    CHECK(e1.terms.size() == e4.terms.size());
    CHECK(v1 == v4);
}
