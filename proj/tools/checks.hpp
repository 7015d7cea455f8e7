#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hl/report.hpp"

namespace hl {

struct Criterion {
    int id = 0;
    std::string title;
    bool pass = false;
    Json data;
};

Criterion check_kernel(std::uint64_t seed, int samples = 10);
Criterion check_unfolding();
Criterion check_vanishing();
Criterion check_funceq(std::uint64_t seed, int samples = 20);
Criterion check_lvalue();
Criterion check_j_bruteforce();
Criterion check_derivative();
Criterion check_adjoint();
Criterion check_closure(double T_max = 32);

// criteria 1..9 in order
std::vector<Criterion> run_checks(std::uint64_t seed);
Json checks_json(const std::vector<Criterion>& cs, std::uint64_t seed);

// exact J(n) for D = 12, c = O by naive scans, as prime -> exponent
std::map<long long, long long> j_bruteforce_d12(long long n);

TorusData d12_data(const std::string& ideal, long long p);

}  // namespace hl
