#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "hl/lfunc.hpp"

using namespace hl;

namespace {

HeckeL d12_L() {
    Field F(12);
    auto G = narrow_class_group(F);
    return HeckeL(F, G, totally_odd_characters(F, G).at(0));
}

// L(chi_-3, 2) and Catalan's constant
constexpr double kL3_2 = 0.78130241289648629686;
constexpr double kCatalan = 0.91596559417721901505;

}  // namespace

TEST_CASE("coefficients") {
    auto L = d12_L();
    CHECK(L.coefficient(1) == 1);
    CHECK(L.coefficient(2) == -1);
    CHECK(L.coefficient(3) == -1);
    CHECK(L.coefficient(4) == 1);
    CHECK(L.coefficient(5) == 0);
    CHECK(L.coefficient(11) == -2);
    CHECK(L.coefficient(13) == 2);
    // product of the two genus Dirichlet characters
    auto chi3 = [](long long n) { return n % 3 == 0 ? 0 : (n % 3 == 1 ? 1 : -1); };
    auto chi4 = [](long long n) { return n % 2 == 0 ? 0 : (n % 4 == 1 ? 1 : -1); };
    auto a = L.coefficients(300);
    for (long long n = 1; n <= 300; ++n) {
        long long conv = 0;
        for (long long m = 1; m <= n; ++m)
            if (n % m == 0) conv += chi3(m) * chi4(n / m);
        CHECK_MESSAGE(a.at(n) == conv, "n=" << n);
    }
}

TEST_CASE("exact value at 0") {
    auto L = d12_L();
    auto g = L.genus_exact_L0();
    REQUIRE(g);
    CHECK(g->L0 == Rational(1, 6));
    CHECK(g->d1 * g->d2 == 12);
    auto e = L.exact_L0();
    REQUIRE(e);
    CHECK(*e == Rational(1, 6));
    CHECK(L.lambda_continuation(0.0).value == doctest::Approx(1.0 / 6).epsilon(1e-12));
}

TEST_CASE("continuation against the Dirichlet series") {
    auto L = d12_L();
    double ref = kL3_2 * kCatalan;
    CHECK(L.l_continuation(2.0).value == doctest::Approx(ref).epsilon(1e-11));
    auto d = L.dirichlet_partial(2.0, 20000);
    CHECK(std::fabs(d.value - ref) < std::max(d.error, 1e-4));
    CHECK_THROWS(L.dirichlet_partial(1.0, 100));
    CHECK_THROWS(L.dirichlet_partial(0.5, 100));
}

TEST_CASE("functional equation and derivative") {
    auto L = d12_L();
    int W = L.root_number();
    CHECK(std::abs(W) == 1);
    for (double S : {0.2, 0.7, 1.5}) {
        double lhs = std::pow(12.0, S / 2) * L.lambda_continuation(S).value;
        double rhs = W * std::pow(12.0, (1 - S) / 2) * L.lambda_continuation(1 - S).value;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
    const double h = 1e-4;
    double fd = (L.lambda_continuation(h).value - L.lambda_continuation(-h).value) / (2 * h);
    CHECK(L.lambda_derivative0() == doctest::Approx(fd).epsilon(1e-7));
    CHECK(L.lambda_derivative0() == doctest::Approx(-0.229475).epsilon(1e-5));
}

TEST_CASE("rational reconstruction") {
    CHECK(*rational_reconstruct(1.0 / 6, 100, 1e-12) == Rational(1, 6));
    CHECK(*rational_reconstruct(-22.0 / 7, 100, 1e-12) == Rational(-22, 7));
    CHECK(*rational_reconstruct(3.0, 10, 1e-12) == Rational(3));
    CHECK_FALSE(rational_reconstruct(M_PI, 100, 1e-12));
    CHECK_FALSE(rational_reconstruct(1.0 / 997, 100, 1e-12));
}

TEST_CASE("class number values") {
    CHECK(dirichlet_L0(-3) == Rational(1, 3));
    CHECK(dirichlet_L0(-4) == Rational(1, 2));
    CHECK(dirichlet_L0(-7) == Rational(1));
    CHECK(dirichlet_L0(-8) == Rational(1));
    CHECK(dirichlet_L0(-23) == Rational(3));
    CHECK(dirichlet_L0(-20) == Rational(2));
}

TEST_CASE("kernel tail") {
    boost::math::quadrature::exp_sinh<double> q;
    for (double S : {-0.5, 0.0, 1.0, 2.5})
        for (double z : {0.1, 1.0, 3.0})
            for (int k : {0, 1}) {
                double ref = q.integrate([&](double t) {
                    double y = z + t;
                    return 4 * boost::math::cyl_bessel_k(0, 2 * y) * std::pow(y, S) * std::pow(std::log(y), k);
                });
                CHECK_MESSAGE(kernel_tail(S, z, k, 1e-13) == doctest::Approx(ref).epsilon(1e-9), "S=" << S << " z=" << z << " k=" << k);
            }
    CHECK(kernel_tail(0.0, 2.0, 0, 1e-13) < kernel_tail(0.0, 1.0, 0, 1e-13));
    CHECK_THROWS_AS(kernel_tail(0.0, 0.0, 0, 1e-13), std::invalid_argument);
}
