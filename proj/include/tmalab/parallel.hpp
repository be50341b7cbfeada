#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tmalab {

/// Worker count for a request of n threads (0 = hardware concurrency).
inline unsigned resolve_threads(int requested) {
    if (requested > 0) {
        return static_cast<unsigned>(requested);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Splits [0, total) into one contiguous chunk per worker and runs
/// fn(worker_index, begin, end) on each. Callers must make results
/// independent of the split (see the argmin reduction in the estimator).
template <typename Fn>
void parallel_chunks(std::size_t total, unsigned workers, Fn&& fn) {
    if (total == 0) {
        return;
    }
    workers = static_cast<unsigned>(
        std::min<std::size_t>(workers == 0 ? 1 : workers, total));
    if (workers <= 1) {
        fn(0u, std::size_t{0}, total);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = total / workers;
    const std::size_t rem = total % workers;
    std::size_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t end = begin + base + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, &errors, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

} // namespace tmalab
