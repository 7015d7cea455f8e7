#include "hl/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace hl {

namespace {

int default_threads() {
    if (const char* env = std::getenv("HLIFT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

std::atomic<int> g_threads{0};
thread_local bool t_inside = false;

}  // namespace

int thread_count() {
    int n = g_threads.load();
    if (n <= 0) {
        n = default_threads();
        g_threads.store(n);
    }
    return n;
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : default_threads()); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    int nt = thread_count();
    if (nt <= 1 || n < 2 || t_inside) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        t_inside = true;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    int used = (int)std::min<std::size_t>(nt, n);
    for (int t = 0; t < used; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

double tree_sum(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::vector<double> cur = v;
    while (cur.size() > 1) {
        std::vector<double> nxt((cur.size() + 1) / 2);
        for (std::size_t i = 0; i < nxt.size(); ++i)
            nxt[i] = cur[2 * i] + (2 * i + 1 < cur.size() ? cur[2 * i + 1] : 0.0);
        cur.swap(nxt);
    }
    return cur[0];
}

}  // namespace hl
