#include <doctest.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "hl/special_fn.hpp"

using namespace hl;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }
}  // namespace

TEST_CASE("hermite low degrees") {
    for (double t : {-2.5, -0.3, 0.0, 1.1, 4.0}) {
        CHECK(hermite(0, t) == 1.0);
        CHECK(hermite(1, t) == Approx(2 * t));
        CHECK(hermite(2, t) == Approx(4 * t * t - 2));
        CHECK(hermite(3, t) == Approx(8 * t * t * t - 12 * t));
    }
    CHECK(hermite(0, 7.3) == 1.0);
    CHECK(hermite(3, 2.0) == 40.0);
}

TEST_CASE("hermite recurrence residual") {
    for (int d = 1; d < 12; ++d)
        for (double t = -10; t <= 10; t += 0.37) {
            double a = hermite(d + 1, t), b = 2 * t * hermite(d, t) - 2 * d * hermite(d - 1, t);
            CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
        }
}

TEST_CASE("multi hermite") {
    CHECK(multi_hermite({{1, 1, 1}}, {1, 1, 1}) == 8.0);
    CHECK(multi_hermite({{0, 0}}, {0.3, -2.0}) == 1.0);
    CHECK(multi_hermite({{2, 1}}, {1, 3}) == 12.0);
    CHECK(MultiIndex{{2, 1, 4}}.total() == 7);
    CHECK_THROWS(multi_hermite({{1, 1}}, {1.0}));
}

TEST_CASE("bessel_k is twice the standard function") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> us(-3, 3), ua(0.05, 30);
    for (int i = 0; i < 100; ++i) {
        double s = us(rng), a = ua(rng);
        double v = bessel_k(s, a);
        CHECK(rel(v, bessel_k(-s, a)) <= 1e-10);
        CHECK(rel(v, 2 * boost::math::cyl_bessel_k(s, a)) <= 1e-10);
        CHECK(rel(v, 2 * gsl_sf_bessel_Knu(std::fabs(s), a)) <= 1e-9);
    }
    for (double a = 0.1; a <= 50; a *= 1.3) CHECK(rel(bessel_k(0.5, a), 2 * std::sqrt(kPi / (2 * a)) * std::exp(-a)) <= 1e-10);
    // s = 0, a = 1
    CHECK(rel(bessel_k(0, 1), 0.84204887648141667) <= 1e-12);
    CHECK(rel(bessel_k_scaled(1.5, 40.0), std::exp(40.0) * bessel_k(1.5, 40.0)) <= 1e-10);
    CHECK_THROWS(bessel_k(0.3, 0.0));
    CHECK_THROWS(bessel_k(0.3, -1.0));
}

TEST_CASE("beta_incomplete") {
    for (double t : {0.01, 0.3, 1.0, 4.0, 25.0, 200.0}) CHECK(std::fabs(beta_incomplete(1, t) * t * std::exp(t) - 1) <= 1e-12);
    CHECK(rel(beta_incomplete(0, 1), gsl_sf_expint_E1(1.0)) <= 1e-12);
    CHECK(rel(beta_incomplete(0.5, 1), gsl_sf_gamma_inc(0.5, 1.0)) <= 1e-12);
    for (double s : {-2.3, -1.0, -0.5, 0.0, 0.25, 1.7, 3.2})
        for (double t : {0.05, 0.7, 2.0, 9.0}) {
            // int_1^inf e^{-ty} y^{s-1} dy = t^{-s} Gamma(s, t)
            double oracle = std::pow(t, -s) * gsl_sf_gamma_inc(s, t);
            CHECK(rel(beta_incomplete(s, t), oracle) <= 1e-10);
        }
    CHECK_THROWS(beta_incomplete(0, 0));
}

TEST_CASE("k weights") {
    for (double a : {0.01, 0.4, 1.0, 3.0}) {
        CHECK(std::fabs(k_weight(0, a) - 2) <= 1e-10);
        CHECK(std::fabs(k_weight(0, -a)) <= 1e-10);
        CHECK(rel(k_weight_decayed(0.3, a), k_weight(0.3, a) * std::exp(-2 * kPi * a)) <= 1e-12);
    }
    for (double a : {0.05, 0.3, 1.0, 2.0}) {
        const double h = 1e-4;
        double fd = (k_weight(h, -a) - k_weight(-h, -a)) / (2 * h);
        // with the doubled K the s-derivative is twice beta_0
        CHECK(rel(2 * kappa(a), fd) <= 1e-6);
    }
    CHECK(kappa(1) == beta_incomplete(0, 4 * kPi));
    CHECK_THROWS(k_weight(0.2, 0.0));
    CHECK_THROWS(kappa(-1.0));
}
