#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace crl {

// Static split of [begin, end) into one contiguous block per worker.  Bodies
// must write disjoint state; results do not depend on the worker count.
inline void parallel_for(std::uint64_t begin, std::uint64_t end, int workers,
                         const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    const std::uint64_t total = end > begin ? end - begin : 0;
    if (total == 0) return;
    const std::uint64_t nw = workers > 1 ? std::min<std::uint64_t>(workers, total) : 1;
    if (nw == 1) {
        body(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::uint64_t i = 0; i < nw; ++i) {
        const std::uint64_t lo = begin + total * i / nw;
        const std::uint64_t hi = begin + total * (i + 1) / nw;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace crl
