#ifndef LOCALMAP_PARALLEL_HPP
#define LOCALMAP_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace localmap {

// Runs fn(begin, end) over static contiguous chunks of [begin, end). Chunk
// boundaries depend only on (range, threads), so any computation whose outputs
// are disjoint per index is bitwise reproducible for a fixed thread count.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, int threads, Fn&& fn) {
    const std::size_t total = end > begin ? end - begin : 0;
    if (threads <= 1 || total < 2) {
        if (total > 0) fn(begin, end);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), total);
    const std::size_t chunk = (total + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        if (lo >= end) break;
        const std::size_t hi = std::min(end, lo + chunk);
        pool.emplace_back([lo, hi, &fn] { fn(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace localmap

#endif  // LOCALMAP_PARALLEL_HPP
