#include "hl/qfield.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hl {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 mod_pos(i128 a, i128 m) {
    i128 r = a % m;
    return r < 0 ? r + m : r;
}

long long narrow(i128 x) {
    if (x > (i128)INT64_MAX || x < (i128)INT64_MIN) throw std::overflow_error("ideal arithmetic overflow");
    return (long long)x;
}

long long isqrt(long long n) {
    long long s = (long long)std::sqrt((long double)n);
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

bool squarefree(long long n) {
    if (n < 0) n = -n;
    for (long long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

Rational make_rat(long long n, long long d) { return Rational(n) / Rational(d); }

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

bool is_fundamental_discriminant(long long D) {
    if (D == 0 || D == 1) return false;
    long long r = ((D % 4) + 4) % 4;
    if (r == 1) return squarefree(D);
    if (r == 0) {
        long long m = D / 4;
        long long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree(m);
    }
    return false;
}

int kronecker(long long D, long long n) {
    if (n <= 0) throw std::domain_error("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        long long r = ((D % 8) + 8) % 8;
        if (r % 2 == 0) return 0;
        if (r == 3 || r == 5) result = -result;
    }
    if (n == 1) return result;
    long long a = ((D % n) + n) % n;
    long long m = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

Rational rational_pow(const Rational& q, long long e) {
    Rational base = e >= 0 ? q : Rational(1) / q;
    unsigned long long k = e >= 0 ? e : -e;
    Rational r = 1;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

Rational FractionalIdeal::norm() const { return make_rat(num, den) * make_rat(num, den) * Rational(A); }

std::string FractionalIdeal::str(const Field& F) const {
    std::ostringstream os;
    if (num != 1 || den != 1) {
        os << num;
        if (den != 1) os << "/" << den;
        os << "*";
    }
    QElem w{Rational(B), Rational(1)};
    os << "[" << A << ", " << F.str(w) << "]";
    return os.str();
}

Field::Field(long long disc) : D(disc) {
    if (D <= 0 || !is_fundamental_discriminant(D))
        throw std::invalid_argument("not a positive fundamental discriminant: " + std::to_string(disc));
    isqrtD_ = isqrt(D);
    if (isqrtD_ * isqrtD_ == D) throw std::invalid_argument("square discriminant");
    if (D % 4 == 1) {
        T = 1;
        Nm = (1 - D) / 4;
    } else {
        T = 0;
        Nm = -(D / 4);
    }
    // continued fraction of omega = (T + sqrt D)/2
    BigInt P = T, Q = 2;
    BigInt hm2 = 0, hm1 = 1, km2 = 1, km1 = 0;
    bool found = false;
    for (int it = 0; it < 100000 && !found; ++it) {
        BigInt a = Q > 0 ? floor_div(P + isqrtD_, Q) : -floor_div(P + isqrtD_, -Q) - 1;
        BigInt h = a * hm1 + hm2, k = a * km1 + km2;
        hm2 = hm1;
        hm1 = h;
        km2 = km1;
        km1 = k;
        // p - q omega
        QElem e{Rational(h), Rational(-k)};
        Rational n = norm(e);
        if (n == 1 || n == -1) {
            fund_unit = conj(e);
            fund_unit_norm = n == 1 ? 1 : -1;
            found = true;
        }
        BigInt Pn = a * Q - P;
        BigInt Qn = (BigInt(D) - Pn * Pn) / Q;
        P = Pn;
        Q = Qn;
    }
    if (!found) throw std::runtime_error("fundamental unit search failed");
    if (embed(fund_unit, 0) < 0) fund_unit = QElem{-fund_unit.a, -fund_unit.b};
    eps_plus = fund_unit_norm == 1 ? fund_unit : mul(fund_unit, fund_unit);
    if (embed(eps_plus, 0) < 1.0) eps_plus = inv(eps_plus);
    different = principal(sqrt_disc());
}

QElem Field::mul(const QElem& x, const QElem& y) const {
    Rational bb = x.b * y.b;
    return QElem{x.a * y.a - bb * Nm, x.a * y.b + x.b * y.a + bb * T};
}

QElem Field::conj(const QElem& x) const { return QElem{x.a + x.b * T, -x.b}; }

Rational Field::norm(const QElem& x) const { return x.a * x.a + x.a * x.b * T + x.b * x.b * Nm; }

Rational Field::trace(const QElem& x) const { return 2 * x.a + x.b * T; }

QElem Field::inv(const QElem& x) const {
    Rational n = norm(x);
    if (n == 0) throw std::domain_error("inverse of zero");
    QElem c = conj(x);
    return QElem{c.a / n, c.b / n};
}

double Field::omega_embed(int k) const {
    double s = std::sqrt((double)D);
    return 0.5 * (T + (k == 0 ? s : -s));
}

double Field::embed(const QElem& x, int k) const {
    return static_cast<double>(x.a) + static_cast<double>(x.b) * omega_embed(k);
}

QElem Field::sqrt_disc() const { return QElem{Rational(-T), Rational(2)}; }

std::string Field::str(const QElem& x) const {
    Rational c0, c1;
    long long M;
    if (T == 0) {
        c0 = x.a;
        c1 = x.b;
        M = -Nm;
    } else {
        c0 = x.a + x.b / 2;
        c1 = x.b / 2;
        M = D;
    }
    std::ostringstream os;
    bool any = false;
    if (c0 != 0 || c1 == 0) {
        os << c0;
        any = true;
    }
    if (c1 != 0) {
        if (c1 > 0 && any) os << "+";
        if (c1 == -1)
            os << "-";
        else if (c1 != 1)
            os << c1 << "*";
        os << "sqrt" << M;
    }
    return os.str();
}

QElem Field::parse(const std::string& in) const {
    std::string s;
    for (char ch : in)
        if (!std::isspace((unsigned char)ch)) s += ch;
    if (s.empty()) throw std::invalid_argument("empty element");
    Rational scale = 1;
    if (s.front() == '(') {
        auto close = s.find(')');
        if (close == std::string::npos) throw std::invalid_argument("bad element: " + in);
        std::string rest = s.substr(close + 1);
        std::string inner = s.substr(1, close - 1);
        if (!rest.empty()) {
            if (rest[0] != '/') throw std::invalid_argument("bad element: " + in);
            scale = Rational(1) / Rational(BigInt(rest.substr(1)));
        }
        s = inner;
    }
    QElem root;
    long long m = T == 0 ? -Nm : D;
    QElem r{Rational(-T), Rational(2)};  // sqrt D
    if (T == 0) r = QElem{0, 1};         // sqrt m
    QElem out{0, 0};
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        auto pos = term.find("sqrt");
        Rational coef = 1;
        std::string cpart = pos == std::string::npos ? term : term.substr(0, pos);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        if (!cpart.empty()) {
            auto sl = cpart.find('/');
            if (sl == std::string::npos)
                coef = Rational(BigInt(cpart));
            else
                coef = Rational(BigInt(cpart.substr(0, sl))) / Rational(BigInt(cpart.substr(sl + 1)));
        } else if (pos == std::string::npos) {
            throw std::invalid_argument("bad element: " + in);
        }
        if (pos != std::string::npos) {
            std::string after = term.substr(pos + 4);
            std::size_t k = 0;
            while (k < after.size() && std::isdigit((unsigned char)after[k])) ++k;
            long long M = std::stoll(after.substr(0, k));
            std::string tail = after.substr(k);
            if (!tail.empty()) {
                if (tail[0] != '/') throw std::invalid_argument("bad element: " + in);
                coef /= Rational(BigInt(tail.substr(1)));
            }
            QElem base;
            if (M == m)
                base = r;
            else if (T == 0 && M == D)
                base = QElem{0, 2};
            else
                throw std::invalid_argument("sqrt" + std::to_string(M) + " not in the field");
            out.a += sign * coef * base.a;
            out.b += sign * coef * base.b;
        } else {
            out.a += sign * coef;
        }
    }
    out.a *= scale;
    out.b *= scale;
    return out;
}

FractionalIdeal Field::from_generators(const std::vector<std::pair<Rational, Rational>>& gens) const {
    BigInt L = 1;
    for (auto& g : gens) {
        L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(g.first));
        L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(g.second));
    }
    struct V {
        i128 x, y;
    };
    std::vector<V> vs;
    for (auto& g : gens) {
        Rational gx = g.first * L, gy = g.second * L;
        vs.push_back({(i128)narrow((i128)static_cast<long long>(boost::multiprecision::numerator(gx))),
                      (i128)static_cast<long long>(boost::multiprecision::numerator(gy))});
    }
    bool have = false;
    V piv{0, 0};
    i128 a = 0;
    for (V v : vs) {
        if (!have) {
            if (v.y != 0) {
                piv = v;
                have = true;
            } else {
                a = gcd128(a, v.x);
            }
            continue;
        }
        V p = piv, w = v;
        while (w.y != 0) {
            i128 q = p.y / w.y;
            p.x -= q * w.x;
            p.y -= q * w.y;
            std::swap(p, w);
        }
        piv = p;
        a = gcd128(a, w.x);
    }
    if (!have || a == 0) throw std::invalid_argument("generators do not span a rank-2 module");
    if (piv.y < 0) {
        piv.x = -piv.x;
        piv.y = -piv.y;
    }
    i128 A = a, C = piv.y, B = mod_pos(piv.x, A);
    i128 g = gcd128(gcd128(A, B), C);
    A /= g;
    B /= g;
    C /= g;
    if (C != 1) throw std::logic_error("module is not an ideal");
    FractionalIdeal I;
    I.A = narrow(A);
    I.B = narrow(mod_pos(B, A));
    Rational sc = Rational(BigInt(narrow(g))) / Rational(L);
    I.num = static_cast<long long>(boost::multiprecision::numerator(sc));
    I.den = static_cast<long long>(boost::multiprecision::denominator(sc));
    return I;
}

FractionalIdeal Field::principal(const QElem& x) const {
    if (x.is_zero()) throw std::domain_error("principal ideal of zero");
    QElem w{0, 1};
    QElem xw = mul(x, w);
    return from_generators({{x.a, x.b}, {xw.a, xw.b}});
}

std::pair<QElem, QElem> Field::basis(const FractionalIdeal& I) const {
    Rational s = make_rat(I.num, I.den);
    return {QElem{s * I.B, s}, QElem{s * I.A, 0}};
}

FractionalIdeal Field::mul(const FractionalIdeal& I, const FractionalIdeal& J) const {
    QElem a1{Rational(I.A), 0}, b1{Rational(I.B), 1};
    QElem a2{Rational(J.A), 0}, b2{Rational(J.B), 1};
    std::vector<std::pair<Rational, Rational>> g;
    for (auto& x : {a1, b1})
        for (auto& y : {a2, b2}) {
            QElem p = mul(x, y);
            g.push_back({p.a, p.b});
        }
    FractionalIdeal K = from_generators(g);
    Rational sc = make_rat(K.num, K.den) * make_rat(I.num, I.den) * make_rat(J.num, J.den);
    K.num = static_cast<long long>(boost::multiprecision::numerator(sc));
    K.den = static_cast<long long>(boost::multiprecision::denominator(sc));
    return K;
}

FractionalIdeal Field::conj(const FractionalIdeal& I) const {
    FractionalIdeal J = I;
    J.B = (long long)mod_pos(-(i128)I.B - T, I.A);
    return J;
}

FractionalIdeal Field::inverse(const FractionalIdeal& I) const {
    FractionalIdeal J = conj(I);
    Rational sc = make_rat(I.den, I.num) / Rational(I.A);
    J.num = static_cast<long long>(boost::multiprecision::numerator(sc));
    J.den = static_cast<long long>(boost::multiprecision::denominator(sc));
    return J;
}

bool Field::contains(const FractionalIdeal& I, const QElem& x) const {
    Rational sc = make_rat(I.den, I.num);
    Rational ya = x.a * sc, yb = x.b * sc;
    if (boost::multiprecision::denominator(yb) != 1) return false;
    Rational r = (ya - yb * I.B) / I.A;
    return boost::multiprecision::denominator(r) == 1;
}

bool Field::divides(const FractionalIdeal& I, const FractionalIdeal& J) const {
    auto [a, b] = basis(J);
    return contains(I, a) && contains(I, b);
}

PrimeDecomposition Field::factor_prime(long long p) const {
    if (!is_prime(p)) throw std::invalid_argument("factor_prime: not prime");
    PrimeDecomposition out;
    out.p = p;
    int k = kronecker(D, p);
    if (k == -1) {
        out.kind = Splitting::Inert;
        FractionalIdeal P;
        P.num = p;
        out.primes.push_back(P);
        return out;
    }
    std::vector<long long> roots;
    for (long long r = 0; r < p; ++r) {
        i128 v = (i128)r * r - (i128)T * r + Nm;
        if (mod_pos(v, p) == 0) roots.push_back(r);
    }
    out.kind = k == 0 ? Splitting::Ramified : Splitting::Split;
    for (long long r : roots) {
        FractionalIdeal P;
        P.A = p;
        P.B = (long long)mod_pos(-(i128)r, p);
        out.primes.push_back(P);
    }
    std::sort(out.primes.begin(), out.primes.end());
    return out;
}

std::vector<PrimeFactor> Field::factor(const FractionalIdeal& I0) const {
    if (!I0.is_integral()) throw std::invalid_argument("factor: ideal not integral");
    std::vector<PrimeFactor> out;
    FractionalIdeal I = I0;
    Rational nr = I.norm();
    BigInt n = boost::multiprecision::numerator(nr);
    long long nn = static_cast<long long>(n);
    for (long long q = 2; nn > 1; ++q) {
        if (q * q > nn) q = nn;
        if (nn % q != 0) continue;
        while (nn % q == 0) nn /= q;
        for (auto& P : factor_prime(q).primes) {
            int e = 0;
            FractionalIdeal Pi = inverse(P);
            while (divides(P, I)) {
                I = mul(I, Pi);
                ++e;
            }
            if (e > 0) out.push_back({P, q, e});
        }
    }
    return out;
}

BinaryForm Field::form_of(const FractionalIdeal& I) const {
    QElem beta{Rational(I.B), 1};
    Rational a = norm(beta) / I.A;
    return BinaryForm{static_cast<long long>(boost::multiprecision::numerator(a)), 2 * I.B + T, I.A};
}

bool Field::is_reduced(const BinaryForm& f) const {
    auto lt_sqrt = [&](long long x) { return x <= 0 || (i128)x * x < D; };   // x < sqrt D
    auto gt_sqrt = [&](long long x) { return x > 0 && (i128)x * x > D; };    // x > sqrt D
    long long aa = f.a < 0 ? -f.a : f.a;
    return f.b > 0 && lt_sqrt(f.b) && gt_sqrt(2 * aa + f.b) && lt_sqrt(2 * aa - f.b);
}

BinaryForm Field::rho(const BinaryForm& f) const {
    long long c = f.c, ac = c < 0 ? -c : c;
    long long m = 2 * ac;
    long long r;
    if ((i128)ac * ac > D) {
        r = (long long)mod_pos(-(i128)f.b, m);
        if (r > ac) r -= m;
    } else {
        long long lo = isqrtD_ - m + 1;
        r = lo + (long long)mod_pos(-(i128)f.b - lo, m);
    }
    i128 cn = ((i128)r * r - D) / (4 * (i128)c);
    return BinaryForm{c, r, narrow(cn)};
}

BinaryForm Field::reduce(BinaryForm f) const {
    for (int it = 0; it < 100000; ++it) {
        if (is_reduced(f)) return f;
        f = rho(f);
    }
    throw std::runtime_error("form reduction did not terminate");
}

std::vector<BinaryForm> Field::cycle(const BinaryForm& f0) const {
    std::vector<BinaryForm> cyc{f0};
    BinaryForm f = rho(f0);
    while (!(f == f0)) {
        cyc.push_back(f);
        f = rho(f);
        if (cyc.size() > 1000000) throw std::runtime_error("cycle too long");
    }
    return cyc;
}

BinaryForm Field::narrow_key(const FractionalIdeal& I) const {
    auto cyc = cycle(reduce(form_of(I)));
    return *std::min_element(cyc.begin(), cyc.end());
}

int NarrowClassGroup::class_of(const Field& F, const FractionalIdeal& I) const {
    return key_index.at(F.narrow_key(I));
}

NarrowClassGroup narrow_class_group(const Field& F) {
    NarrowClassGroup G;
    std::vector<FractionalIdeal> gens;
    long long bound = std::max<long long>(2, (long long)std::floor(0.5 * std::sqrt((double)F.D)));
    for (long long q = 2; q <= bound; ++q) {
        if (!is_prime(q)) continue;
        for (auto& P : F.factor_prime(q).primes) gens.push_back(P);
    }
    gens.push_back(F.different);
    FractionalIdeal one = F.unit_ideal();
    G.representatives.push_back(one);
    G.key_index[F.narrow_key(one)] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int i = queue.front();
        queue.pop_front();
        for (auto& g : gens) {
            FractionalIdeal P = F.mul(G.representatives[i], g);
            auto key = F.narrow_key(P);
            if (!G.key_index.count(key)) {
                int idx = (int)G.representatives.size();
                G.key_index[key] = idx;
                G.representatives.push_back(P);
                queue.push_back(idx);
            }
        }
    }
    G.order = (int)G.representatives.size();
    G.table.assign(G.order, std::vector<int>(G.order));
    for (int i = 0; i < G.order; ++i)
        for (int j = 0; j < G.order; ++j)
            G.table[i][j] = G.class_of(F, F.mul(G.representatives[i], G.representatives[j]));
    auto power = [&](int x, long long k) {
        int r = 0;
        for (long long t = 0; t < k; ++t) r = G.table[r][x];
        return r;
    };
    long long h = G.order;
    for (long long l = 2; l <= h; ++l) {
        if (!is_prime(l) || h % l != 0) continue;
        std::vector<int> rank;  // number of cyclic factors of order >= l^k
        long long prev = 1;
        for (long long lk = l;; lk *= l) {
            long long cnt = 0;
            for (int x = 0; x < G.order; ++x)
                if (power(x, lk) == 0) ++cnt;
            long long ratio = cnt / prev;
            int r = 0;
            while (ratio > 1) {
                ratio /= l;
                ++r;
            }
            if (r == 0) break;
            rank.push_back(r);
            prev = cnt;
        }
        long long lk = 1;
        for (std::size_t k = 0; k < rank.size(); ++k) {
            lk *= l;
            int next = k + 1 < rank.size() ? rank[k + 1] : 0;
            for (int t = 0; t < rank[k] - next; ++t) G.elementary_divisors.push_back(lk);
        }
    }
    std::sort(G.elementary_divisors.begin(), G.elementary_divisors.end());
    return G;
}

std::vector<NarrowCharacter> all_characters(const NarrowClassGroup& G) {
    // homomorphisms to {+-1} factor through G/G^2; pick generators greedily
    std::vector<int> gens;
    std::vector<int> span{0};
    std::vector<char> in(G.order, 0);
    in[0] = 1;
    for (int x = 0; x < G.order; ++x) {
        if (in[x]) continue;
        gens.push_back(x);
        std::vector<int> cur = span;
        for (int y : cur) {
            int z = y;
            for (int k = 0; k < G.order; ++k) {
                z = G.table[z][x];
                if (!in[z]) {
                    in[z] = 1;
                    span.push_back(z);
                }
            }
        }
        // close under the table
        for (std::size_t a = 0; a < span.size(); ++a)
            for (std::size_t b = 0; b < span.size(); ++b) {
                int z = G.table[span[a]][span[b]];
                if (!in[z]) {
                    in[z] = 1;
                    span.push_back(z);
                }
            }
    }
    std::vector<NarrowCharacter> out;
    std::size_t k = gens.size();
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        std::vector<int> val(G.order, 0);
        val[0] = 1;
        bool ok = true;
        std::vector<int> known{0};
        for (std::size_t g = 0; g < k; ++g) {
            int v = (mask >> g) & 1 ? -1 : 1;
            if (val[gens[g]] != 0 && val[gens[g]] != v) {
                ok = false;
                break;
            }
            val[gens[g]] = v;
            known.push_back(gens[g]);
        }
        if (!ok) continue;
        for (bool changed = true; changed;) {
            changed = false;
            for (int a = 0; a < G.order; ++a)
                for (int b = 0; b < G.order; ++b) {
                    if (!val[a] || !val[b]) continue;
                    int z = G.table[a][b];
                    int v = val[a] * val[b];
                    if (val[z] == 0) {
                        val[z] = v;
                        changed = true;
                    } else if (val[z] != v) {
                        ok = false;
                    }
                }
        }
        if (!ok) continue;
        for (int a = 0; a < G.order && ok; ++a)
            for (int b = 0; b < G.order && ok; ++b)
                if (val[G.table[a][b]] != val[a] * val[b]) ok = false;
        if (!ok) continue;
        NarrowCharacter chi;
        chi.values = val;
        bool dup = false;
        for (auto& c : out)
            if (c.values == val) dup = true;
        if (!dup) out.push_back(chi);
    }
    return out;
}

std::vector<NarrowCharacter> totally_odd_characters(const Field& F, const NarrowClassGroup& G) {
    int dcls = G.class_of(F, F.different);
    std::vector<NarrowCharacter> out;
    for (auto chi : all_characters(G)) {
        if (chi(dcls) == -1) {
            chi.is_totally_odd = true;
            out.push_back(chi);
        }
    }
    return out;
}

std::vector<FractionalIdeal> divisors_between(const Field& F, const QElem& nu, const FractionalIdeal& c) {
    if (nu.is_zero()) throw std::domain_error("divisors_between: nu = 0");
    FractionalIdeal I = F.mul(F.principal(nu), F.different);
    if (!I.is_integral()) throw std::invalid_argument("divisors_between: (nu)d not integral");
    if (!F.divides(c, I)) return {};
    auto fac = F.factor(I);
    std::vector<FractionalIdeal> divs{F.unit_ideal()};
    for (auto& pf : fac) {
        std::vector<FractionalIdeal> next;
        for (auto& d : divs) {
            FractionalIdeal cur = d;
            next.push_back(cur);
            for (int e = 1; e <= pf.exponent; ++e) {
                cur = F.mul(cur, pf.prime);
                next.push_back(cur);
            }
        }
        divs = std::move(next);
    }
    std::vector<FractionalIdeal> out;
    for (auto& d : divs)
        if (F.divides(c, d)) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hl
