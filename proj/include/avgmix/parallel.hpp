#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace avgmix {

// Worker count: hardware concurrency unless AVGMIX_THREADS overrides it.
inline int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("AVGMIX_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) hw = cap;
    }
    return hw;
}

// Evaluates f(0..count-1) across workers and returns results indexed by
// trial. Work stealing is dynamic but the result order is fixed, so any
// reduction done in index order is independent of scheduling. The first
// exception thrown by a worker is rethrown after all workers join.
template <class T, class F>
std::vector<T> run_indexed(int count, F&& f) {
    std::vector<T> results(count);
    int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) results[i] = f(i);
        return results;
    }
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    results[i] = f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return results;
}

} // namespace avgmix
