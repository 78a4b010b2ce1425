#ifndef CARDBOX_PARALLEL_HPP_
#define CARDBOX_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cardbox {

/// Splits [0, n) into contiguous chunks and runs fn(worker, begin, end) on
/// up to `threads` workers. threads <= 1 runs fn(0, 0, n) inline (the
/// serial reference mode). fn must be safe to run concurrently on disjoint
/// ranges and results must not depend on the schedule. The first worker
/// exception is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        fn(0u, std::size_t{0}, n);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = static_cast<std::size_t>(w) * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, &errors, w, begin, end] {
            try {
                fn(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Element-wise convenience wrapper over parallel_chunks.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    parallel_chunks(n, threads, [&fn](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
    });
}

}  // namespace cardbox

#endif  // CARDBOX_PARALLEL_HPP_
