#pragma once
#include <Eigen/Dense>
#include <vector>

#include "hl/field_data.hpp"

namespace hl {

struct LatticePoint {
    std::vector<long long> coeffs;
    Eigen::VectorXd x;
    long long trace = 0;
    double l1 = 0;
};

// |weight(nu) * coefficient(nu)| <= amp * L1^degree * exp(-rate * L1)
struct DecayWeight {
    double amp = 1.0;
    double rate = 0.0;
    int degree = 0;
};

struct TruncatedPoints {
    std::vector<LatticePoint> points;
    double cutoff = 0;
    double tail_bound = 0;
};

// integer trace of each basis vector; throws if the trace is not integral on the lattice
std::vector<long long> trace_row(const Eigen::MatrixXd& basis);

std::vector<LatticePoint> totally_positive_trace(const Eigen::MatrixXd& basis, long long n);

// Points with trace n, negative in slot l (0-based), positive elsewhere, L1 norm <= cutoff.
std::vector<LatticePoint> mixed_sign_points(const Eigen::MatrixXd& basis, long long n, int l, double cutoff);
TruncatedPoints mixed_sign_trace(const Eigen::MatrixXd& basis, long long n, int l, double eps, const DecayWeight& w);
// bound on sum of amp * L1^degree * exp(-rate * L1) over lattice points with L1 > cutoff
double ball_tail_bound(const Eigen::MatrixXd& basis, double cutoff, const DecayWeight& w);
double mixed_tail_bound(const Eigen::MatrixXd& basis, long long n, double cutoff, const DecayWeight& w);

// all nonzero points with L1 norm <= cutoff
std::vector<LatticePoint> l1_ball(const Eigen::MatrixXd& basis, double cutoff);

const Eigen::MatrixXd& dual_different_lattice(const TorusData& td, int class_index);

// box bound on coefficients from the smallest Gram eigenvalue
double coefficient_radius(const Eigen::MatrixXd& basis, double euclid_radius);

}  // namespace hl
