#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ellint {

// Worker count: hardware concurrency, capped by ELLINT_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ELLINT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return n;
}

namespace detail {
inline thread_local bool in_worker = false;
}

// Runs body(i) for i in [0, n). Each index is written by exactly one worker, so results
// stored per index are independent of scheduling. The first exception is rethrown.
// Calls made from inside a worker run serially.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const unsigned workers =
        detail::in_worker ? 1u : static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            detail::in_worker = true;
            for (std::size_t i; (i = next.fetch_add(1)) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            }
        });
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace ellint
