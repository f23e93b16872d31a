#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ren {

// Thread count used when the caller asks for 0 ("machine parallelism").
inline int default_threads() noexcept {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

// Splits [0, n) into at most `threads` contiguous chunks and runs fn(begin, end)
// on each; returns after every chunk finished. Chunks below min_chunk are merged.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn, std::size_t min_chunk = 1) {
    if (threads <= 0) threads = default_threads();
    std::size_t chunks = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                               std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
    if (chunks <= 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
        workers.emplace_back([&fn, n, c, chunks] { fn(n * c / chunks, n * (c + 1) / chunks); });
    }
    fn(std::size_t{0}, n / chunks);
}

}  // namespace ren
