#include <doctest.h>

#include <cmath>
#include <random>

#include "hl/lattice_enum.hpp"

using namespace hl;

namespace {

Eigen::MatrixXd embedded_basis(const Field& F, const FractionalIdeal& I) {
    auto [a, b] = F.basis(I);
    Eigen::MatrixXd B(2, 2);
    B << F.embed(a, 0), F.embed(b, 0), F.embed(a, 1), F.embed(b, 1);
    return B;
}

// naive scan of integer coefficients in a box
std::size_t naive_count(const Eigen::MatrixXd& B, long long n, int box, int slot, double l1max) {
    std::size_t c = 0;
    for (int i = -box; i <= box; ++i)
        for (int j = -box; j <= box; ++j) {
            Eigen::Vector2d x = B * Eigen::Vector2d(i, j);
            double tr = x(0) + x(1);
            if (std::fabs(tr - n) > 1e-7) continue;
            if (slot < 0) {
                if (x(0) > 1e-12 && x(1) > 1e-12) ++c;
            } else {
                int other = 1 - slot;
                if (x(slot) < -1e-12 && x(other) > 1e-12 && std::fabs(x(0)) + std::fabs(x(1)) <= l1max) ++c;
            }
        }
    return c;
}

TorusData d12() {
    Field F(12);
    auto G = narrow_class_group(F);
    auto chi = totally_odd_characters(F, G).at(0);
    return export_n2(F, G, chi, F.principal(F.parse("4+sqrt3")), 13);
}

}  // namespace

TEST_CASE("totally positive trace slices for D = 12") {
    Field F(12);
    auto B = embedded_basis(F, F.inverse(F.different));
    CHECK(totally_positive_trace(B, 1).size() == 3);
    CHECK(totally_positive_trace(B, 2).size() == 7);
    CHECK(totally_positive_trace(B, 0).empty());
    CHECK(totally_positive_trace(B, -3).empty());
    for (auto& p : totally_positive_trace(B, 5)) {
        CHECK(p.trace == 5);
        CHECK(p.x(0) > 0);
        CHECK(p.x(1) > 0);
    }
}

TEST_CASE("totally positive slices match a naive scan") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> pickD(0, 2), pickn(1, 12);
    const long long Ds[] = {12, 24, 40};
    for (int i = 0; i < 20; ++i) {
        long long D = Ds[pickD(rng)];
        long long n = pickn(rng);
        Field F(D);
        auto B = embedded_basis(F, F.inverse(F.different));
        CHECK_MESSAGE(totally_positive_trace(B, n).size() == naive_count(B, n, 400, -1, 0), "D=" << D << " n=" << n);
    }
}

TEST_CASE("mixed sign slices") {
    Field F(12);
    auto B = embedded_basis(F, F.inverse(F.different));
    for (long long n : {0LL, 1LL, 3LL, -2LL})
        for (int l = 0; l < 2; ++l) {
            auto pts = mixed_sign_points(B, n, l, 50.0);
            for (auto& p : pts) {
                CHECK(p.trace == n);
                CHECK(p.x(l) < 0);
                CHECK(p.x(1 - l) > 0);
                CHECK(p.l1 <= 50.0 + 1e-9);
            }
            CHECK(pts.size() == naive_count(B, n, 400, l, 50.0));
        }
}

TEST_CASE("certified truncation") {
    Field F(12);
    auto B = embedded_basis(F, F.inverse(F.different));
    DecayWeight w{4.0, 2 * 3.14159 * 0.8, 1};
    std::size_t prev = 0;
    for (double eps : {1e-4, 1e-5, 1e-6, 1e-8, 1e-10}) {
        auto t = mixed_sign_trace(B, 0, 1, eps, w);
        CHECK(t.tail_bound < eps);
        CHECK(t.points.size() >= prev);
        prev = t.points.size();
        // actual discarded weight is below the certificate
        double beyond = 0;
        for (auto& p : mixed_sign_points(B, 0, 1, t.cutoff + 20))
            if (p.l1 > t.cutoff) beyond += w.amp * std::pow(p.l1, w.degree) * std::exp(-w.rate * p.l1);
        CHECK(beyond <= t.tail_bound);
    }
    CHECK_THROWS(mixed_sign_trace(B, 0, 1, 1e-6, DecayWeight{1.0, 0.0, 0}));
}

TEST_CASE("slice growth is linear in n") {
    Field F(12);
    auto B = embedded_basis(F, F.inverse(F.different));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (long long n = 10; n <= 160; n += 10) {
        double x = std::log((double)n), y = std::log((double)totally_positive_trace(B, n).size());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::fabs(slope - 1.0) < 0.3);
}

TEST_CASE("dual different lattice") {
    auto td = d12();
    const auto& L = dual_different_lattice(td, 0);
    Field F(12);
    auto B = embedded_basis(F, F.inverse(F.different));
    // same lattice: change of basis is unimodular
    Eigen::MatrixXd M = B.inverse() * L;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(std::fabs(M(i, j) - std::round(M(i, j))) < 1e-9);
    CHECK(std::fabs(std::fabs(M.determinant()) - 1) < 1e-9);
    CHECK_THROWS(dual_different_lattice(td, 5));
    CHECK_THROWS(dual_different_lattice(td, -1));
}
