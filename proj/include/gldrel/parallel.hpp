#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gldrel {

/// Number of worker threads to use: explicit request, else hardware width.
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(first, last) over [0, count) split into contiguous blocks, one per
/// worker. Workers write to disjoint index ranges, so results are identical
/// for any thread count as long as fn is deterministic per index.
template <class Fn>
void parallel_for_blocks(std::size_t count, int threads, Fn&& fn) {
    const int nt = resolve_threads(threads);
    if (nt <= 1 || count < 2) {
        fn(std::size_t{0}, count);
        return;
    }
    const std::size_t nworkers = std::min<std::size_t>(static_cast<std::size_t>(nt), count);
    const std::size_t block = (count + nworkers - 1) / nworkers;
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        const std::size_t first = w * block;
        const std::size_t last = std::min(count, first + block);
        if (first >= last) break;
        pool.emplace_back([&fn, first, last] { fn(first, last); });
    }
    for (auto& th : pool) th.join();
}

} // namespace gldrel
