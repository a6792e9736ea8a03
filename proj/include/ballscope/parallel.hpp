#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ballscope {

/// Worker cap: BALLSCOPE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned thread_cap()
{
    if (const char* env = std::getenv("BALLSCOPE_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs f(i) for i in [0, n). Results must be written to per-index slots by
/// the caller so merging stays deterministic. The first exception thrown by
/// any task is rethrown here.
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                    try {
                        f(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                        next.store(n);
                    }
                }
            });
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace ballscope
