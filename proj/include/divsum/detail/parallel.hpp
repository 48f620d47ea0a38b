#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace divsum::detail {

/// Runs f(i) for i in [lo, hi) across up to `workers` threads. Callers write
/// results into per-index slots, so the outcome does not depend on the
/// worker count. The first exception thrown by f is rethrown on the caller.
template <class F>
void parallel_for(long long lo, long long hi, int workers, F&& f) {
    const long long count = hi - lo;
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (long long i = lo; i < hi; ++i) f(i);
        return;
    }
    const int used = static_cast<int>(std::min<long long>(workers, count));
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (long long i = lo + w; i < hi; i += used) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace divsum::detail
