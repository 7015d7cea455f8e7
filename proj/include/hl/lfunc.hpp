#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hl/qfield.hpp"

namespace hl {

struct LValue {
    double s = 0;
    double value = 0;
    double error = 0;
    std::string method;  // DIRICHLET | CONTINUED | GENUS_EXACT
};

struct GenusFactor {
    long long d1, d2;
    Rational L0;
};

// L-function of a narrow class character; s is real throughout.
class HeckeL {
public:
    HeckeL(const Field& F, const NarrowClassGroup& G, const NarrowCharacter& chi);

    // sum of chi over integral ideals of norm n
    long long coefficient(long long n) const;
    std::vector<long long> coefficients(long long nmax) const;

    LValue dirichlet_partial(double s, long long B) const;
    // Lambda(S) = Gamma((1+S)/2)^2 pi^-(1+S) L(S)
    LValue lambda_continuation(double S, double tol = 1e-13) const;
    LValue l_continuation(double S, double tol = 1e-13) const;
    double lambda_derivative0(double tol = 1e-13) const;
    int root_number() const;

    std::optional<GenusFactor> genus_exact_L0() const;
    // exact L(chi, 0): genus oracle when available, else rational detection
    std::optional<Rational> exact_L0() const;

    const Field& field() const { return F_; }

private:
    Field F_;
    NarrowClassGroup G_;
    NarrowCharacter chi_;
    mutable int W_ = 0;
    struct Local {
        Splitting kind;
        int x1, x2;
    };
    mutable std::map<long long, Local> local_;
    double xi_parts(double S, double t, double tol, int deriv, double& P, double& Q) const;
};

// incomplete Mellin transform of 4 y K_0(2y): int_z^inf 4 K_0(2y) y^S (log y)^k dy
double kernel_tail(double S, double z, int k, double tol);

// continued-fraction rational reconstruction; nullopt if no p/q with q <= maxden within tol
std::optional<Rational> rational_reconstruct(double x, long long maxden, double tol);

// L(0, chi_d) for a negative fundamental discriminant d, exactly
Rational dirichlet_L0(long long d);

}  // namespace hl
