#pragma once
#include <cstddef>
#include <functional>
#include <vector>

namespace hl {

int thread_count();
void set_thread_count(int n);

// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
// write into slot i and reduce afterwards in index order, so results do not
// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// pairwise summation in index order
double tree_sum(const std::vector<double>& v);

}  // namespace hl
