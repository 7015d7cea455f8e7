#include "hl/special_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hl {

int MultiIndex::total() const {
    int s = 0;
    for (int d : entries) s += d;
    return s;
}

double hermite(int d, double t) {
    if (d < 0) throw std::domain_error("hermite: negative degree");
    if (d == 0) return 1.0;
    double hm = 1.0, h = 2.0 * t;
    for (int k = 1; k < d; ++k) {
        double hn = 2.0 * t * h - 2.0 * k * hm;
        hm = h;
        h = hn;
    }
    return h;
}

double multi_hermite(const MultiIndex& d, const std::vector<double>& v) {
    if (d.entries.size() != v.size()) throw std::invalid_argument("multi_hermite: length mismatch");
    double p = 1.0;
    for (std::size_t m = 0; m < v.size(); ++m) p *= hermite(d.entries[m], v[m]);
    return p;
}

double bessel_k_scaled(double s, double a, double tol) {
    if (!(a > 0)) throw std::domain_error("bessel_k: a must be positive");
    const double as = std::fabs(s);
    const double target = -std::log(tol) + 8.0;
    // integrand exp(-a(cosh x - 1)) cosh(s x) on [0, inf), doubled
    auto f = [&](double x) {
        double sh = std::sinh(0.5 * x);
        return std::exp(-2.0 * a * sh * sh) * std::cosh(s * x);
    };
    double X = 0.5;
    for (;;) {
        double sh = std::sinh(0.5 * X);
        double expo = 2.0 * a * sh * sh - as * X;
        if (expo > target && a * std::sinh(X) > 2.0 * as + 1.0) break;
        X += 0.25;
    }
    int n = 16;
    double h = X / n;
    double sum = 0.5 * (f(0.0) + f(X));
    for (int i = 1; i < n; ++i) sum += f(i * h);
    double prev = sum * h;
    for (int it = 0; it < 20; ++it) {
        double mid = 0.0;
        for (int i = 0; i < n; ++i) mid += f((i + 0.5) * h);
        sum += mid;
        n *= 2;
        h *= 0.5;
        double cur = sum * h;
        if (std::fabs(cur - prev) <= tol * std::fabs(cur) && it >= 1) return 2.0 * cur;
        prev = cur;
    }
    return 2.0 * prev;
}

double bessel_k(double s, double a, double tol) {
    return std::exp(-a) * bessel_k_scaled(s, a, tol);
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

double e1_series(double t) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -t / k;
        double add = -term / k;
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(t) + sum;
}

// Gamma(a, t) for a in (0, 1] and 0 < t < 1
double upper_gamma_small_t(double a, double t) {
    double sum = 1.0 / a, term = 1.0 / a;
    for (int n = 1; n < 300; ++n) {
        term *= t / (a + n);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return std::tgamma(a) - std::exp(-t) * std::pow(t, a) * sum;
}

// exp(t) t^(-a) Gamma(a, t) * exp(-t) by modified Lentz, t >= 1
double beta_cf(double a, double t) {
    const double tiny = 1e-300;
    double b = t + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-t) * h;
}

}  // namespace

double beta_incomplete(double s, double t) {
    if (!(t > 0)) throw std::domain_error("beta_incomplete: t must be positive");
    if (t >= 1.0) return beta_cf(s, t);
    if (s > 0 && s <= 1.0) return std::pow(t, -s) * upper_gamma_small_t(s, t);
    if (s > 1.0) {
        // upward: Gamma(a+1,t) = a Gamma(a,t) + t^a e^-t
        double a = s - std::ceil(s - 1.0);
        double g = upper_gamma_small_t(a, t);
        while (a + 0.5 < s) {
            g = a * g + std::pow(t, a) * std::exp(-t);
            a += 1.0;
        }
        return std::pow(t, -s) * g;
    }
    double r = std::round(s);
    double a, g;
    if (std::fabs(s - r) < 1e-14) {
        a = 0.0;
        g = e1_series(t);
    } else {
        a = s + std::ceil(-s);
        g = upper_gamma_small_t(a, t);
    }
    while (a > s + 0.5) {
        a -= 1.0;
        g = (g - std::pow(t, a) * std::exp(-t)) / a;
    }
    return std::pow(t, -s) * g;
}

double k_weight_decayed(double s, double a) {
    if (a == 0) throw std::domain_error("k_weight: a must be nonzero");
    const double x = 2.0 * std::numbers::pi * std::fabs(a);
    double sg = a > 0 ? 1.0 : -1.0;
    double kk = bessel_k_scaled(0.5 + s, x) + sg * bessel_k_scaled(0.5 - s, x);
    return std::pow(std::fabs(a), 0.5 + s) * std::exp(-x) * kk;
}

double k_weight(double s, double a) {
    if (a == 0) throw std::domain_error("k_weight: a must be nonzero");
    const double x = 2.0 * std::numbers::pi * std::fabs(a);
    double sg = a > 0 ? 1.0 : -1.0;
    double kk = bessel_k_scaled(0.5 + s, x) + sg * bessel_k_scaled(0.5 - s, x);
    double pre = a > 0 ? 1.0 : std::exp(-2.0 * x);
    return pre * std::pow(std::fabs(a), 0.5 + s) * kk;
}

double kappa(double a) {
    if (!(a > 0)) throw std::domain_error("kappa: a must be positive");
    return beta_incomplete(0.0, 4.0 * std::numbers::pi * a);
}

}  // namespace hl
