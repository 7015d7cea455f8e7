#pragma once
#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "hl/qfield.hpp"

namespace hl {

// Columns of each matrix are the embedded basis vectors of a lattice in R^N.
struct LatticePair {
    int class_index = 0;
    int chi = 1;
    Rational norm_a = 1;
    Eigen::MatrixXd lattice_a;     // sigma(a)
    Eigen::MatrixXd lattice_ac;    // sigma(ac)
    Eigen::MatrixXd lattice_dual;  // sigma(a^-1 d^-1)
};

struct ExactN2 {
    long long disc = 0;
    FractionalIdeal c;
    std::vector<FractionalIdeal> class_reps;
};

struct TorusData {
    int N = 2;
    Eigen::MatrixXd g_eps;
    std::vector<LatticePair> pairs;
    int class_count = 0;
    std::vector<int> char_values;
    std::vector<std::vector<int>> class_table;
    Eigen::MatrixXd unit_log_lattice;  // N x (N-1)
    Rational norm_c = 1, norm_d = 1;
    long long disc = 0;
    long long p = 0;
    long long width_inf = 1, width_zero = 0;
    int chi_c = 1, chi_d = -1;
    std::optional<ExactN2> exact;

    double eps_log() const;  // log of the totally positive unit, N = 2
};

struct Violation {
    std::string code;
    std::string detail;
};

TorusData export_n2(const Field& F, const NarrowClassGroup& G, const NarrowCharacter& chi,
                    const FractionalIdeal& c, long long p);

std::vector<Violation> validate(const TorusData& td);
std::string to_json(const TorusData& td);
TorusData from_json(const std::string& text);
void save(const TorusData& td, const std::string& path);
TorusData load(const std::string& path);

// Rebuilds the exact field objects of an N = 2 torus data set.
struct FieldContext {
    Field F;
    NarrowClassGroup G;
    NarrowCharacter chi;
    FractionalIdeal c;
    long long p;
    int chi_of(const FractionalIdeal& I) const { return chi(G.class_of(F, I)); }
};
FieldContext field_context(const TorusData& td);

std::string real_str(double x);

}  // namespace hl
