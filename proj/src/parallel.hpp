#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace orbit::detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers (<= 0: all cores).
// fn must not throw.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            fn(i);
        }
    };
    int k = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    k = std::max(1, std::min<int>(k, static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int i = 1; i < k; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace orbit::detail
