#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace branchwork {

// Deterministic parallel map: fills out[i] = f(i) for i in [0, n) using
// fixed-size chunks claimed from an atomic counter. Each index writes only
// its own preallocated slot, so the result vector is identical for every
// thread count, including 1 (which runs inline). If any f throws, the
// exception from the lowest-numbered chunk is rethrown, again independent of
// scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F f,
                            std::size_t chunk = 64) {
    std::vector<T> out(n);
    if (n == 0)
        return out;
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = f(i);
        return out;
    }
    if (chunk == 0)
        chunk = 1;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<std::exception_ptr> errors(nchunks);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= nchunks)
                return;
            const std::size_t lo = c * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            try {
                for (std::size_t i = lo; i < hi; ++i)
                    out[i] = f(i);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };

    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(threads, nchunks);
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    for (const auto& err : errors)
        if (err)
            std::rethrow_exception(err);
    return out;
}

} // namespace branchwork
