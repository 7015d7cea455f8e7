#include "hl/lattice_enum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hl/parallel.hpp"

namespace hl {

std::vector<long long> trace_row(const Eigen::MatrixXd& basis) {
    std::vector<long long> t(basis.cols());
    for (int j = 0; j < basis.cols(); ++j) {
        double s = basis.col(j).sum();
        double r = std::round(s);
        if (std::fabs(s - r) > 1e-8 * std::max(1.0, std::fabs(s))) throw std::invalid_argument("trace is not integral on the lattice");
        t[j] = (long long)r;
    }
    return t;
}

double coefficient_radius(const Eigen::MatrixXd& basis, double euclid_radius) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(basis.transpose() * basis);
    double lmin = es.eigenvalues().minCoeff();
    if (!(lmin > 0)) throw std::invalid_argument("degenerate lattice basis");
    return euclid_radius / std::sqrt(lmin);
}

namespace {

// Scan coefficient vectors k with |k_j| <= K, trace(k) = n when use_trace, keeping those accepted.
template <class Accept>
std::vector<LatticePoint> scan(const Eigen::MatrixXd& B, long long K, bool use_trace, long long n, Accept accept) {
    const int N = (int)B.cols();
    std::vector<long long> T(N, 0);
    bool have_trace = true;
    try {
        T = trace_row(B);
    } catch (const std::invalid_argument&) {
        if (use_trace) throw;
        have_trace = false;
    }
    int pivot = -1;
    if (use_trace) {
        for (int j = 0; j < N; ++j)
            if (T[j] != 0 && (pivot < 0 || std::llabs(T[j]) < std::llabs(T[pivot]))) pivot = j;
        if (pivot < 0) throw std::invalid_argument("trace vanishes on the lattice");
    }
    // first free coordinate drives the parallel slabs
    int first = (pivot == 0) ? 1 : 0;
    std::size_t slabs = 2 * K + 1;
    std::vector<std::vector<LatticePoint>> parts(slabs);
    parallel_for(slabs, [&](std::size_t s) {
        std::vector<long long> k(N, 0);
        k[first] = (long long)s - K;
        std::vector<int> free;
        for (int j = 0; j < N; ++j)
            if (j != first && j != pivot) free.push_back(j);
        std::vector<LatticePoint>& out = parts[s];
        auto emit = [&]() {
            if (use_trace) {
                long long rest = n;
                for (int j = 0; j < N; ++j)
                    if (j != pivot) rest -= T[j] * k[j];
                if (rest % T[pivot] != 0) return;
                k[pivot] = rest / T[pivot];
                if (std::llabs(k[pivot]) > K) return;
            }
            Eigen::VectorXd kv(N);
            for (int j = 0; j < N; ++j) kv(j) = (double)k[j];
            LatticePoint p;
            p.x = B * kv;
            p.coeffs = k;
            long long tr = 0;
            for (int j = 0; j < N; ++j) tr += (have_trace ? T[j] : 0) * k[j];
            p.trace = tr;
            p.l1 = p.x.cwiseAbs().sum();
            if (accept(p)) out.push_back(std::move(p));
        };
        std::function<void(std::size_t)> rec = [&](std::size_t d) {
            if (d == free.size()) {
                emit();
                return;
            }
            for (long long v = -K; v <= K; ++v) {
                k[free[d]] = v;
                rec(d + 1);
            }
        };
        rec(0);
    });
    std::vector<LatticePoint> all;
    for (auto& p : parts)
        for (auto& q : p) all.push_back(std::move(q));
    std::sort(all.begin(), all.end(), [](const LatticePoint& a, const LatticePoint& b) { return a.coeffs < b.coeffs; });
    return all;
}

}  // namespace

std::vector<LatticePoint> totally_positive_trace(const Eigen::MatrixXd& B, long long n) {
    if (n <= 0) return {};
    // totally positive with trace n forces |x|_2 <= |x|_1 = n
    long long K = (long long)std::ceil(coefficient_radius(B, (double)n)) + 1;
    return scan(B, K, true, n, [&](const LatticePoint& p) {
        for (int i = 0; i < p.x.size(); ++i)
            if (!(p.x(i) > 0)) return false;
        return true;
    });
}

std::vector<LatticePoint> mixed_sign_points(const Eigen::MatrixXd& B, long long n, int l, double cutoff) {
    if (l < 0 || l >= B.rows()) throw std::invalid_argument("bad slot");
    long long K = (long long)std::ceil(coefficient_radius(B, cutoff)) + 1;
    return scan(B, K, true, n, [&](const LatticePoint& p) {
        if (p.l1 > cutoff) return false;
        for (int i = 0; i < p.x.size(); ++i) {
            if (i == l && !(p.x(i) < 0)) return false;
            if (i != l && !(p.x(i) > 0)) return false;
        }
        return true;
    });
}

double mixed_tail_bound(const Eigen::MatrixXd& B, long long n, double X, const DecayWeight& w) {
    (void)n;
    const int N = (int)B.cols();
    double rad = coefficient_radius(B, 1.0);
    double tail = 0;
    for (int j = 0; j < 100000; ++j) {
        double R = X + j + 1;
        double count = std::pow(2.0 * R * rad + 1.0, N - 1);
        double term = count * w.amp * std::pow(R, w.degree) * std::exp(-w.rate * (X + j));
        tail += term;
        if (term < 1e-30 * std::max(tail, 1e-300) || term < 1e-300) break;
    }
    return tail;
}

double ball_tail_bound(const Eigen::MatrixXd& B, double X, const DecayWeight& w) {
    const int N = (int)B.cols();
    // points with L1 <= R lie in the Euclidean ball of radius R, hence in the coefficient box
    double rad = coefficient_radius(B, 1.0);
    double tail = 0;
    for (int j = 0; j < 100000; ++j) {
        double R = X + j + 1;
        double count = std::pow(2.0 * R * rad + 1.0, N);
        double term = count * w.amp * std::pow(R, w.degree) * std::exp(-w.rate * (X + j));
        tail += term;
        if (term < 1e-30 * std::max(tail, 1e-300) || term < 1e-300) break;
    }
    return tail;
}

TruncatedPoints mixed_sign_trace(const Eigen::MatrixXd& B, long long n, int l, double eps, const DecayWeight& w) {
    if (!(w.rate > 0)) throw std::invalid_argument("weight does not decay");
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    double X = std::max<double>(1.0, std::fabs((double)n));
    while (mixed_tail_bound(B, n, X, w) >= eps) X += 0.5;
    TruncatedPoints out;
    out.cutoff = X;
    out.tail_bound = mixed_tail_bound(B, n, X, w);
    out.points = mixed_sign_points(B, n, l, X);
    return out;
}

std::vector<LatticePoint> l1_ball(const Eigen::MatrixXd& B, double cutoff) {
    long long K = (long long)std::ceil(coefficient_radius(B, cutoff)) + 1;
    return scan(B, K, false, 0, [&](const LatticePoint& p) {
        bool zero = true;
        for (auto c : p.coeffs)
            if (c) zero = false;
        return !zero && p.l1 <= cutoff;
    });
}

const Eigen::MatrixXd& dual_different_lattice(const TorusData& td, int cls) {
    if (cls < 0 || cls >= (int)td.pairs.size()) throw std::out_of_range("bad class index");
    return td.pairs[cls].lattice_dual;
}

}  // namespace hl
