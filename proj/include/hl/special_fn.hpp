#pragma once
#include <vector>

namespace hl {

struct MultiIndex {
    std::vector<int> entries;
    int total() const;
};

double hermite(int d, double t);
double multi_hermite(const MultiIndex& d, const std::vector<double>& v);

// K_s(a) = int_0^inf exp(-a(t+1/t)/2) t^s dt/t. This is twice the usual
// modified Bessel function of the second kind.
double bessel_k(double s, double a, double tol = 1e-12);
// exp(a) * bessel_k(s, a)
double bessel_k_scaled(double s, double a, double tol = 1e-12);

// int_1^inf exp(-t y) y^(s-1) dy
double beta_incomplete(double s, double t);

double k_weight(double s, double a);
// k_weight(s, a) * exp(-2 pi a); finite for every a != 0
double k_weight_decayed(double s, double a);
double kappa(double a);

}  // namespace hl
