#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Field;

// a + b*omega with rational coordinates
struct QElem {
    Rational a, b;
    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const QElem& o) const { return a == o.a && b == o.b; }
};

// (num/den) * [A, B + omega], the bracket being a primitive integral ideal
struct FractionalIdeal {
    long long num = 1, den = 1;
    long long A = 1, B = 0;
    Rational norm() const;
    bool is_integral() const { return den == 1; }
    bool operator==(const FractionalIdeal& o) const {
        return num == o.num && den == o.den && A == o.A && B == o.B;
    }
    bool operator<(const FractionalIdeal& o) const {
        return std::tie(num, den, A, B) < std::tie(o.num, o.den, o.A, o.B);
    }
    std::string str(const Field& F) const;
};

struct PrimeFactor {
    FractionalIdeal prime;
    long long p;
    int exponent;
};

enum class Splitting { Split, Ramified, Inert };

struct PrimeDecomposition {
    long long p;
    Splitting kind;
    std::vector<FractionalIdeal> primes;
};

struct BinaryForm {
    long long a, b, c;
    bool operator<(const BinaryForm& o) const { return std::tie(a, b, c) < std::tie(o.a, o.b, o.c); }
    bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

class Field {
public:
    long long D;
    long long T, Nm;  // omega^2 = T omega - Nm
    QElem fund_unit;
    int fund_unit_norm;
    QElem eps_plus;
    FractionalIdeal different;

    explicit Field(long long disc);

    QElem mul(const QElem& x, const QElem& y) const;
    QElem conj(const QElem& x) const;
    QElem inv(const QElem& x) const;
    Rational norm(const QElem& x) const;
    Rational trace(const QElem& x) const;
    double embed(const QElem& x, int k) const;
    double omega_embed(int k) const;
    QElem sqrt_disc() const;
    // parse "a+b*sqrtm"-style strings such as 4+sqrt3, 1/2, 2-3sqrt3, (1+sqrt5)/2
    QElem parse(const std::string& s) const;
    std::string str(const QElem& x) const;

    FractionalIdeal unit_ideal() const { return FractionalIdeal{}; }
    FractionalIdeal principal(const QElem& x) const;
    FractionalIdeal mul(const FractionalIdeal& I, const FractionalIdeal& J) const;
    FractionalIdeal inverse(const FractionalIdeal& I) const;
    FractionalIdeal conj(const FractionalIdeal& I) const;
    bool contains(const FractionalIdeal& I, const QElem& x) const;
    // I | J  (J contained in I)
    bool divides(const FractionalIdeal& I, const FractionalIdeal& J) const;
    // oriented Z-basis as field elements
    std::pair<QElem, QElem> basis(const FractionalIdeal& I) const;

    PrimeDecomposition factor_prime(long long p) const;
    std::vector<PrimeFactor> factor(const FractionalIdeal& I) const;

    BinaryForm form_of(const FractionalIdeal& I) const;
    BinaryForm reduce(BinaryForm f) const;
    std::vector<BinaryForm> cycle(const BinaryForm& reduced) const;
    BinaryForm narrow_key(const FractionalIdeal& I) const;

private:
    long long isqrtD_;
    BinaryForm rho(const BinaryForm& f) const;
    bool is_reduced(const BinaryForm& f) const;
    FractionalIdeal from_generators(const std::vector<std::pair<Rational, Rational>>& gens) const;
};

int kronecker(long long D, long long n);
bool is_fundamental_discriminant(long long D);
bool is_prime(long long n);

struct NarrowClassGroup {
    int order = 0;
    std::vector<long long> elementary_divisors;
    std::vector<FractionalIdeal> representatives;
    std::vector<std::vector<int>> table;  // index of rep_i * rep_j
    std::map<BinaryForm, int> key_index;
    int class_of(const Field& F, const FractionalIdeal& I) const;
    int identity() const { return 0; }
};

struct NarrowCharacter {
    std::vector<int> values;
    bool is_totally_odd = false;
    int operator()(int cls) const { return values.at(cls); }
};

NarrowClassGroup narrow_class_group(const Field& F);
std::vector<NarrowCharacter> all_characters(const NarrowClassGroup& G);
std::vector<NarrowCharacter> totally_odd_characters(const Field& F, const NarrowClassGroup& G);

// integral ideals n with c | n | (nu) d
std::vector<FractionalIdeal> divisors_between(const Field& F, const QElem& nu, const FractionalIdeal& c);

Rational rational_pow(const Rational& q, long long e);

}  // namespace hl
