#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace slowsde {

// Runs fn(i) for i in [0, count) across `threads` workers. Work is handed out
// in fixed-size blocks and every fn(i) writes only to slot i of the caller's
// output, so results are bitwise independent of the thread count. threads <= 1
// runs inline.
template <class Fn>
void parallel_for(std::uint64_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    constexpr std::uint64_t kBlock = 1024;
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t begin = next.fetch_add(kBlock);
            if (begin >= count) return;
            const std::uint64_t end = std::min(begin + kBlock, count);
            for (std::uint64_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>((count + kBlock - 1) / kBlock));
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace slowsde
