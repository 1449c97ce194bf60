#pragma once

#include <thread>
#include <vector>

namespace sgbench {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into `threads` chunks.
// Chunk boundaries depend only on (n, threads), so callers can merge
// per-chunk results in chunk order and stay deterministic.
template <typename Fn>
void parallel_chunks(size_t n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    size_t chunks = std::min<size_t>(static_cast<size_t>(threads), n ? n : 1);
    if (chunks <= 1) {
        fn(size_t{0}, size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    size_t base = n / chunks, extra = n % chunks, begin = 0;
    for (size_t c = 0; c < chunks; ++c) {
        size_t end = begin + base + (c < extra ? 1 : 0);
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace sgbench
