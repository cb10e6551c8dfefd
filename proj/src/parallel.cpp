#include "seqpart/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace seqpart {

namespace {
int g_workers = []() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}();
}  // namespace

int worker_count() { return g_workers; }

void set_worker_count(int workers) { g_workers = std::max(1, workers); }

void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    chunk_size = std::max<std::size_t>(1, chunk_size);
    const std::size_t num_chunks = (n + chunk_size - 1) / chunk_size;
    const int workers = std::min<int>(g_workers, static_cast<int>(num_chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) {
            fn(c * chunk_size, std::min(n, (c + 1) * chunk_size), c);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= num_chunks) break;
            fn(c * chunk_size, std::min(n, (c + 1) * chunk_size), c);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers) - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    return splitmix64(splitmix64(base) ^ salt);
}

}  // namespace seqpart
