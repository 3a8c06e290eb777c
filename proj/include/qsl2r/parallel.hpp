#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qsl2r {

// QSL2R_THREADS when set and positive, else the requested count, else the core count
inline int worker_count(int requested = 0) {
    if (const char* env = std::getenv("QSL2R_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// results in input order regardless of scheduling; first exception is rethrown
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F f, int threads = 0) -> std::vector<decltype(f(items[0]))> {
    using R = decltype(f(items[0]));
    std::vector<R> out(items.size());
    const int nw = std::min<int>(worker_count(threads), std::max<size_t>(1, items.size()));
    if (nw <= 1) {
        for (size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
        return out;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < items.size();) {
                try {
                    out[i] = f(items[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace qsl2r
