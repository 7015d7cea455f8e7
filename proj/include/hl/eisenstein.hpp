#pragma once
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hl/field_data.hpp"
#include "hl/lattice_enum.hpp"
#include "hl/lfunc.hpp"

namespace hl {

using cplx = std::complex<double>;

// Formal product prod q_i^{e_i} of positive rationals, kept over primes.
class AlgebraicLog {
public:
    AlgebraicLog() = default;
    static AlgebraicLog of(const Rational& q, const Rational& e);
    AlgebraicLog& add(const Rational& q, const Rational& e);
    AlgebraicLog& add(const AlgebraicLog& o, const Rational& e = 1);
    AlgebraicLog scaled(const Rational& e) const;
    double value() const;
    bool is_rational() const;  // all exponents integral
    Rational to_rational() const;
    const std::map<BigInt, Rational>& factors() const { return f_; }
    bool operator==(const AlgebraicLog& o) const { return f_ == o.f_; }
    std::string str() const;

private:
    std::map<BigInt, Rational> f_;  // prime -> exponent
};

struct Divisor {
    int chi;
    long long norm;
};

// sum of coeff * base^(-2s), keyed by base
using DirichletPoly = std::map<Rational, long long>;

std::vector<Divisor> sigma_divisors(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu);
// sigma_{chi,c}(nu, 2s)
double sigma_div(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu, double s);
DirichletPoly sigma_poly(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu);

struct NuTerm {
    QElem nu;
    double e1 = 0, e2 = 0;
    long long trace = 0;
    double l1 = 0;
    std::vector<Divisor> divisors;
    double sigma(double s) const;
};

// 2^-N i^N pi^(-N(1+s)) Gamma(1+s)^N sqrt(D), carried as its factors
struct NormalizationC {
    Rational two_power = Rational(1, 4);
    int i_power = 2;
    long long disc = 0;
    double value(double s) const;
};

struct SeriesValue {
    cplx value;
    cplx constant_term;
    double tail = 0;
    double lambda_error = 0;
    std::size_t terms = 0;
};

class EisensteinExpansion {
public:
    FieldContext ctx;
    FractionalIdeal c;
    double cutoff = 0;  // L1 bound on nu
    std::vector<NuTerm> terms;
    NormalizationC C;

    EisensteinExpansion(FieldContext ctx, FractionalIdeal c, double cutoff);
    const HeckeL& L() const { return *L_; }
    LValue lambda(double S) const;  // cached
    int chi_c() const;
    int chi_d() const;

private:
    std::shared_ptr<HeckeL> L_;
    mutable std::shared_ptr<std::mutex> mu_;
    mutable std::shared_ptr<std::map<double, LValue>> cache_;
};

EisensteinExpansion build_expansion(const TorusData& td, double cutoff);
EisensteinExpansion build_expansion(const FieldContext& ctx, const FractionalIdeal& c, double cutoff);
SeriesValue eval_series(const EisensteinExpansion& e, cplx tau, double s);
// tail bound of the nonconstant sum beyond the stored cutoff at height y
double series_tail(const EisensteinExpansion& e, double y, double s);

struct DirectValue {
    cplx value;  // already multiplied by C(s)
    double norm_bound = 0;
    double tail_estimate = 0;
    std::size_t points = 0;
};
DirectValue direct_lattice_eval(const TorusData& td, cplx tau, double s, double norm_bound);
// window |z1|/|z2| in [ratio_lo, ratio_lo * eps^2) selecting one representative per unit orbit
double orbit_window_lo();

struct JValue {
    long long n = 0;
    Rational value;
    AlgebraicLog log;
    std::size_t nu_count = 0;
};

struct MixedTerm {
    QElem nu;
    double e1 = 0, e2 = 0;
    long long trace = 0;
    int slot = 0;  // index of the negative embedding
    double l1 = 0;
    long long sigma0 = 0;
};

struct PrintedCoefficients {
    Rational B;
    double A = 0;
    AlgebraicLog log_alpha;
};

struct DerivativeExpansion {
    FieldContext ctx;
    FractionalIdeal c;
    int chi_c = 0, chi_d = 0;
    Rational L0;
    double lambda_prime0 = 0;
    Rational B;
    double A = 0;
    AlgebraicLog log_alpha;
    PrintedCoefficients printed;  // provisional, metadata only
    long long n_max = 0;
    std::map<long long, JValue> J;
    double cutoff = 0;
    std::map<long long, std::vector<MixedTerm>> mixed;  // keyed by trace

    double a_coefficient(long long n, double y) const;
    // coefficient of e(n x) in the psi-period -1/4 L_N E'
    double psi_mode(long long n, double y) const;
    double mixed_tail(double y) const;
};

DerivativeExpansion build_derivative(const TorusData& td, long long n_max, double cutoff);
DerivativeExpansion build_derivative(const FieldContext& ctx, const FractionalIdeal& c, long long n_max, double cutoff);
JValue j_coefficient(const FieldContext& ctx, const FractionalIdeal& c, long long n);
cplx eval_derivative(const DerivativeExpansion& d, cplx tau, double* tail = nullptr);
// -1/4 L_N E'(tau) from the Fourier modes
cplx psi_period_modes(const DerivativeExpansion& d, cplx tau);

FractionalIdeal conjugate_divisor(const FieldContext& ctx, const FractionalIdeal& c);
// E'_c|gamma_0 (tau) = chi(c)/N(c) E'_cbar(tau/p); the psi-period picks up an extra p
struct CuspZero {
    DerivativeExpansion dexp;
    long long p = 0;
    Rational e_factor;
    Rational psi_factor() const { return e_factor * p; }
};
CuspZero cusp_zero_expansion(const DerivativeExpansion& d, long long p);

struct FunceqReport {
    std::size_t checked = 0;
    double max_residual = 0;
};
FunceqReport funceq_check(const EisensteinExpansion& e, double s);
// exact: sigma(nu,-2s) = sgn N(nu) chi(dc) N(nu d c)^{2s} sigma(nu,2s) as Dirichlet polynomials,
// and at the integer s given, as rationals
bool funceq_exact(const FieldContext& ctx, const FractionalIdeal& c, const QElem& nu, int s_int);

struct Matrix2 {
    long long a, b, c, d;
};
double modularity_check(const EisensteinExpansion& e, const Matrix2& g, cplx tau, double s);

}  // namespace hl
