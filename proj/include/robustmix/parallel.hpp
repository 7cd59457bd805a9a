#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace robustmix::parallel {

// Worker count: ROBUSTMIX_WORKERS overrides hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("ROBUSTMIX_WORKERS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, n) across the worker pool. Results must be written
// to disjoint slots so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(long n, Fn&& fn) {
    const int workers = worker_count();
    if (n <= 1 || workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const int used = static_cast<int>(std::min<long>(workers, n));
    pool.reserve(static_cast<size_t>(used));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<bool> failed{false};
    for (int t = 0; t < used; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (long i = t; i < n && !failed.load(std::memory_order_relaxed); i += used) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace robustmix::parallel
