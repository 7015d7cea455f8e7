#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "checks.hpp"
#include "hl/parallel.hpp"

using namespace hl;

namespace {

std::string run_binary(const std::string& cmd) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    pclose(p);
    return out;
}

}  // namespace

int main() {
    const std::uint64_t seed = 7;
    set_thread_count(1);
    std::vector<std::function<Criterion()>> jobs{
        [&] { return check_kernel(seed); }, check_unfolding, check_vanishing, [&] { return check_funceq(seed); },
        check_lvalue, check_j_bruteforce, check_derivative, check_adjoint, [] { return check_closure(); }};
    std::vector<Criterion> results;
    bool all = true;
    for (auto& job : jobs) {
        auto t0 = std::chrono::steady_clock::now();
        Criterion c = job();
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s (%.1f s) %s\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), sec, c.data.dump().c_str());
        std::fflush(stdout);
        all = all && c.pass;
        results.push_back(c);
    }
    auto t0 = std::chrono::steady_clock::now();
    std::string one = render(checks_json(results, seed), Format::Json);
    std::string eight = run_binary(std::string(HLIFT_BIN) + " check-all --seed 7 --threads 8");
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool same = !eight.empty() && one == eight;
    std::printf("%s 10 determinism: check-all --seed 7, 1 vs 8 threads (%.1f s) {\"bytes\":%zu,\"identical\":%s}\n",
                same ? "PASS" : "FAIL", sec, one.size(), same ? "true" : "false");
    all = all && same;
    std::printf("%s\n", all ? "ALL PASS" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
