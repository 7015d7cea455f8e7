#include <doctest.h>

#include <random>

#include "hl/qfield.hpp"

using namespace hl;

namespace {

FractionalIdeal random_ideal(const Field& F, std::mt19937_64& rng) {
    static const long long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23};
    std::uniform_int_distribution<int> pick(0, 8), k(0, 2);
    FractionalIdeal I = F.unit_ideal();
    int m = k(rng) + 1;
    for (int i = 0; i < m; ++i) {
        auto dec = F.factor_prime(primes[pick(rng)]);
        I = F.mul(I, dec.primes[k(rng) % dec.primes.size()]);
    }
    return I;
}

}  // namespace

TEST_CASE("field construction") {
    Field F(12);
    CHECK(F.fund_unit == F.parse("2+sqrt3"));
    CHECK(F.fund_unit_norm == 1);
    CHECK(F.eps_plus == F.parse("2+sqrt3"));
    CHECK(F.different.norm() == 12);
    Field F5(5);
    CHECK(F5.fund_unit_norm == -1);
    CHECK(F5.fund_unit == F5.parse("(1+sqrt5)/2"));
    CHECK(F5.eps_plus == F5.mul(F5.fund_unit, F5.fund_unit));
    CHECK_THROWS(Field(14));
    CHECK_THROWS(Field(-4));
    CHECK_THROWS(Field(48));  // not fundamental
}

TEST_CASE("prime factorization") {
    Field F(12);
    auto d13 = F.factor_prime(13);
    CHECK(d13.kind == Splitting::Split);
    REQUIRE(d13.primes.size() == 2);
    FractionalIdeal c = F.principal(F.parse("4+sqrt3"));
    CHECK((d13.primes[0] == c || d13.primes[1] == c));
    CHECK(c.norm() == 13);
    CHECK(F.embed(F.parse("4+sqrt3"), 0) > 0);
    CHECK(F.embed(F.parse("4+sqrt3"), 1) > 0);
    auto d3 = F.factor_prime(3);
    CHECK(d3.kind == Splitting::Ramified);
    CHECK(d3.primes.at(0) == F.principal(F.parse("sqrt3")));
    CHECK(F.factor_prime(5).kind == Splitting::Inert);
    CHECK_THROWS(F.factor_prime(15));
    CHECK_THROWS(F.principal(QElem{0, 0}));
    for (long long p : {2, 3, 5, 7, 11, 13, 23, 37}) {
        auto d = F.factor_prime(p);
        FractionalIdeal prod = F.unit_ideal();
        for (auto& P : d.primes) prod = F.mul(prod, P);
        if (d.kind == Splitting::Ramified) prod = F.mul(prod, prod);
        CHECK(prod == F.principal(QElem{Rational(p), 0}));
        CHECK((d.kind == Splitting::Split) == (kronecker(12, p) == 1));
    }
}

TEST_CASE("ideal arithmetic properties") {
    std::mt19937_64 rng(11);
    for (long long D : {12LL, 5LL, 24LL, 60LL}) {
        Field F(D);
        for (int i = 0; i < 20; ++i) {
            auto a = random_ideal(F, rng), b = random_ideal(F, rng);
            CHECK(F.mul(a, F.inverse(a)) == F.unit_ideal());
            CHECK(F.mul(a, b).norm() == a.norm() * b.norm());
            CHECK(F.divides(a, F.mul(a, b)));
            auto [x, y] = F.basis(a);
            CHECK(F.contains(a, x));
            CHECK(F.contains(a, y));
        }
    }
}

TEST_CASE("narrow class groups against tables") {
    struct Row {
        long long D;
        int h_plus;
        int odd;
    };
    // narrow class numbers of Q(sqrt m): 5, 8, 12, 21, 24, 40, 60
    for (Row r : {Row{5, 1, 0}, Row{8, 1, 0}, Row{12, 2, 1}, Row{21, 2, 1}, Row{24, 2, 1}, Row{40, 2, 0}, Row{60, 4, 2}}) {
        Field F(r.D);
        auto G = narrow_class_group(F);
        CHECK_MESSAGE(G.order == r.h_plus, "D=" << r.D);
        CHECK_MESSAGE(totally_odd_characters(F, G).size() == (std::size_t)r.odd, "D=" << r.D);
        for (auto& chi : totally_odd_characters(F, G)) CHECK(chi(G.class_of(F, F.different)) == -1);
    }
    Field F(12);
    auto G = narrow_class_group(F);
    CHECK(G.class_of(F, F.principal(F.parse("4+sqrt3"))) == G.identity());
    auto chi = totally_odd_characters(F, G).at(0);
    CHECK(chi.is_totally_odd);
    CHECK(chi(1 - G.identity()) == -1);
}

TEST_CASE("totally odd characters are the sign of the norm") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> u(-30, 30);
    for (long long D : {12LL, 21LL, 60LL}) {
        Field F(D);
        auto G = narrow_class_group(F);
        for (auto& chi : totally_odd_characters(F, G)) {
            int done = 0;
            while (done < 50) {
                QElem b{u(rng), u(rng)};
                if (b.is_zero()) continue;
                int sgn = F.norm(b) > 0 ? 1 : -1;
                CHECK(chi(G.class_of(F, F.principal(b))) == sgn);
                ++done;
            }
        }
    }
}

TEST_CASE("class group law") {
    std::mt19937_64 rng(9);
    Field F(60);
    auto G = narrow_class_group(F);
    for (int i = 0; i < 20; ++i) {
        auto a = random_ideal(F, rng), b = random_ideal(F, rng);
        int ca = G.class_of(F, a), cb = G.class_of(F, b);
        CHECK(G.class_of(F, F.mul(a, b)) == G.table[ca][cb]);
    }
}

TEST_CASE("divisor sandwiches") {
    Field F(12);
    QElem half = F.parse("1/2");
    auto all = divisors_between(F, half, F.unit_ideal());
    REQUIRE(all.size() == 2);
    std::vector<Rational> norms{all[0].norm(), all[1].norm()};
    std::sort(norms.begin(), norms.end());
    CHECK(norms == std::vector<Rational>{1, 3});
    FractionalIdeal r3 = F.principal(F.parse("sqrt3"));
    auto one = divisors_between(F, half, r3);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == r3);
    CHECK(divisors_between(F, half, F.principal(F.parse("4+sqrt3"))).empty());
    CHECK_THROWS(divisors_between(F, F.parse("1/5"), F.unit_ideal()));
}
