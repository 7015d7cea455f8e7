#include "hl/lfunc.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hl/special_fn.hpp"
#include "hl/errors.hpp"

namespace hl {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> f;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.push_back({p, e});
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

}  // namespace

double kernel_tail(double S, double z, int k, double tol) {
    if (!(z > 0)) throw std::invalid_argument("kernel_tail: z must be positive");
    // y = e^l; integrand 4 K_0(2y) y^(S+1) l^k dl
    double lo = std::log(z);
    double hi = lo;
    while (true) {
        double y = std::exp(hi);
        if (2.0 * y - (S + 1.0) * hi - k * std::log(std::fabs(hi) + 1.0) > 60.0 && 2 * y > 4 + std::fabs(S)) break;
        hi += 0.5;
    }
    auto f = [&](double l) {
        double y = std::exp(l);
        double k0 = 0.5 * bessel_k(0.0, 2.0 * y, tol * 0.1);
        double v = 4.0 * k0 * std::exp((S + 1.0) * l);
        for (int i = 0; i < k; ++i) v *= l;
        return v;
    };
    double err;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, tol, &err);
}

Rational dirichlet_L0(long long d) {
    if (d >= 0) throw std::invalid_argument("dirichlet_L0: d must be negative");
    long long q = -d;
    BigInt s = 0;
    for (long long a = 1; a <= q; ++a) s += kronecker(d, a) * a;
    return -Rational(s) / Rational(q);
}

std::optional<Rational> rational_reconstruct(double x, long long maxden, double tol) {
    BigInt hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(r);
        BigInt ai = BigInt((long long)a);
        BigInt h = ai * hm1 + hm2, k = ai * km1 + km2;
        if (k > maxden) return std::nullopt;
        Rational q = Rational(h) / Rational(k);
        if (std::fabs(static_cast<double>(q) - x) <= tol) return q;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        double frac = r - a;
        if (frac < 1e-300) return std::nullopt;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

HeckeL::HeckeL(const Field& F, const NarrowClassGroup& G, const NarrowCharacter& chi) : F_(F), G_(G), chi_(chi) {}

long long HeckeL::coefficient(long long n) const {
    if (n < 1) return 0;
    long long a = 1;
    for (auto [p, e] : factorize(n)) {
        auto it = local_.find(p);
        if (it == local_.end()) {
            auto dec = F_.factor_prime(p);
            Local loc{dec.kind, 1, 1};
            if (dec.kind != Splitting::Inert) loc.x1 = chi_(G_.class_of(F_, dec.primes[0]));
            if (dec.kind == Splitting::Split) loc.x2 = chi_(G_.class_of(F_, dec.primes[1]));
            it = local_.emplace(p, loc).first;
        }
        const Local& loc = it->second;
        long long c = 0;
        if (loc.kind == Splitting::Inert) {
            c = (e % 2 == 0) ? 1 : 0;  // (p) is principal with a totally positive generator
        } else if (loc.kind == Splitting::Ramified) {
            c = (e % 2 == 0) ? 1 : loc.x1;
        } else {
            for (int i = 0; i <= e; ++i) c += ((i % 2) ? loc.x1 : 1) * (((e - i) % 2) ? loc.x2 : 1);
        }
        a *= c;
        if (a == 0) return 0;
    }
    return a;
}

std::vector<long long> HeckeL::coefficients(long long nmax) const {
    std::vector<long long> a(nmax + 1, 0);
    for (long long n = 1; n <= nmax; ++n) a[n] = coefficient(n);
    return a;
}

LValue HeckeL::dirichlet_partial(double s, long long B) const {
    if (!(s > 1)) throw std::domain_error("dirichlet_partial: Re(s) must exceed 1");
    auto a = coefficients(B);
    double sum = 0, comp = 0;
    for (long long n = B; n >= 1; --n) {
        double t = a[n] * std::pow((double)n, -s);
        double y = t - comp;
        double u = sum + y;
        comp = (u - sum) - y;
        sum = u;
    }
    double lb = std::log((double)B);
    double err = s * std::pow((double)B, 1 - s) * ((lb + 1) / (s - 1) + 1 / ((s - 1) * (s - 1)));
    return LValue{s, sum, err, "DIRICHLET"};
}

double HeckeL::xi_parts(double S, double t, double tol, int deriv, double& P, double& Q) const {
    const double A = std::sqrt((double)F_.D) / std::numbers::pi;
    P = 0;
    Q = 0;
    double tail = 0;
    for (long long n = 1;; ++n) {
        double z1 = n * t / A, z2 = n / (t * A);
        if (std::min(z1, z2) > 25.0 + std::fabs(S)) {
            tail = std::exp(-2.0 * std::min(z1, z2)) * n;
            break;
        }
        long long an = coefficient(n);
        if (an == 0) continue;
        double ln = std::log(A / n);
        // d/dS of (A/n)^S G(S, z) = (A/n)^S [ln G0 + G1]
        double g0 = kernel_tail(S, z1, 0, tol);
        double p = std::pow(A / n, S) * g0;
        double h0 = kernel_tail(1 - S, z2, 0, tol);
        double q = std::pow(A / n, 1 - S) * h0;
        if (deriv == 1) {
            double g1 = kernel_tail(S, z1, 1, tol);
            double h1 = kernel_tail(1 - S, z2, 1, tol);
            p = std::pow(A / n, S) * (ln * g0 + g1);
            q = -std::pow(A / n, 1 - S) * (ln * h0 + h1);
        }
        P += an * p;
        Q += an * q;
    }
    P /= std::numbers::pi;
    Q /= std::numbers::pi;
    return tail;
}

int HeckeL::root_number() const {
    if (W_ == 0) {
        double P1, Q1, P2, Q2;
        xi_parts(0.3, 1.0, 1e-12, 0, P1, Q1);
        xi_parts(0.3, 1.37, 1e-12, 0, P2, Q2);
        double w = (P1 - P2) / (Q2 - Q1);
        int W = w > 0 ? 1 : -1;
        if (std::fabs(w - W) > 1e-6) throw NonConvergence("root number not +-1: " + std::to_string(w));
        W_ = W;
    }
    return W_;
}

LValue HeckeL::lambda_continuation(double S, double tol) const {
    int W = root_number();
    double P, Q;
    double tail = xi_parts(S, 1.0, tol, 0, P, Q);
    double xi = P + W * Q;
    double scale = std::pow((double)F_.D, -S / 2);
    double err = scale * (tail + tol * (std::fabs(P) + std::fabs(Q)) + 1e-15);
    return LValue{S, scale * xi, err, "CONTINUED"};
}

LValue HeckeL::l_continuation(double S, double tol) const {
    LValue lam = lambda_continuation(S, tol);
    double g = std::tgamma((1 + S) / 2);
    double f = g * g * std::pow(std::numbers::pi, -(1 + S));
    lam.value /= f;
    lam.error /= std::fabs(f);
    return lam;
}

double HeckeL::lambda_derivative0(double tol) const {
    int W = root_number();
    double P, Q, P1, Q1;
    xi_parts(0.0, 1.0, tol, 0, P, Q);
    xi_parts(0.0, 1.0, tol, 1, P1, Q1);
    double xi0 = P + W * Q;
    double xi1 = P1 + W * Q1;
    return xi1 - 0.5 * std::log((double)F_.D) * xi0;
}

std::optional<GenusFactor> HeckeL::genus_exact_L0() const {
    const long long D = F_.D;
    // a split prime ideal in every class, to evaluate genus characters
    std::vector<long long> norm_in_class(G_.order, 0);
    int found = 0;
    for (long long q = 2; q < 200000 && found < G_.order; ++q) {
        if (!is_prime(q) || D % q == 0) continue;
        auto dec = F_.factor_prime(q);
        if (dec.kind != Splitting::Split) continue;
        for (auto& P : dec.primes) {
            int c = G_.class_of(F_, P);
            if (!norm_in_class[c]) {
                norm_in_class[c] = q;
                ++found;
            }
        }
    }
    if (found < G_.order) return std::nullopt;
    for (long long d = 3; d < D; ++d) {
        if (D % d != 0) continue;
        long long d1 = -d, d2 = -(D / d);
        if (d1 < d2) continue;  // each unordered pair once
        if (!is_fundamental_discriminant(d1) || !is_fundamental_discriminant(d2)) continue;
        bool match = true;
        for (int c = 0; c < G_.order && match; ++c)
            if (kronecker(d1, norm_in_class[c]) != chi_(c)) match = false;
        if (match) return GenusFactor{d1, d2, dirichlet_L0(d1) * dirichlet_L0(d2)};
    }
    return std::nullopt;
}

std::optional<Rational> HeckeL::exact_L0() const {
    if (auto g = genus_exact_L0()) return g->L0;
    auto r1 = rational_reconstruct(lambda_continuation(0.0, 1e-9).value, 1000000, 1e-7);
    auto r2 = rational_reconstruct(lambda_continuation(0.0, 1e-13).value, 1000000, 1e-10);
    if (r1 && r2 && *r1 == *r2) return r1;
    return std::nullopt;
}

}  // namespace hl
