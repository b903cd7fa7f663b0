#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace tindb::kernels {

enum class Backend { Sequential, Parallel };

enum class VolumePolicy { Permissive, Strict };

// Execution setup shared by every kernel entry point. A work item is one
// face (single-geometry ops) or one record (batches); items are grouped
// into fixed chunks of chunk_size so that reduction trees have the same
// shape on both backends.
struct ExecutorConfig {
    Backend backend = Backend::Sequential;
    int worker_count = 1;  // ignored by the Sequential backend
    std::size_t chunk_size = 4096;
    VolumePolicy volume_policy = VolumePolicy::Permissive;

    static ExecutorConfig sequential() { return {}; }

    static ExecutorConfig parallel(int workers, std::size_t chunk = 4096) {
        ExecutorConfig cfg;
        cfg.backend = Backend::Parallel;
        cfg.worker_count = workers > 0 ? workers : static_cast<int>(default_worker_count());
        cfg.chunk_size = chunk > 0 ? chunk : 1;
        return cfg;
    }

    static std::size_t default_worker_count() {
        unsigned hc = std::thread::hardware_concurrency();
        return hc > 0 ? hc : 1;
    }

    std::size_t chunk_count(std::size_t item_count) const {
        return chunk_size == 0 ? 0 : (item_count + chunk_size - 1) / chunk_size;
    }
};

// Runs fn(chunk_index, begin, end) over every chunk of [0, item_count).
// Chunk boundaries depend only on chunk_size, never on the backend or the
// worker count, so per-chunk outputs are positionally stable. Workers pull
// chunk indices from a shared counter; the calling thread participates.
template <typename Fn>
void for_each_chunk(const ExecutorConfig& cfg, std::size_t item_count, Fn&& fn) {
    const std::size_t chunks = cfg.chunk_count(item_count);
    if (chunks == 0) return;

    const std::size_t workers =
        cfg.backend == Backend::Parallel ? static_cast<std::size_t>(cfg.worker_count) : 1;

    if (workers <= 1 || chunks == 1) {
        for (std::size_t k = 0; k < chunks; ++k) {
            const std::size_t begin = k * cfg.chunk_size;
            const std::size_t end = std::min(item_count, begin + cfg.chunk_size);
            fn(k, begin, end);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
            if (k >= chunks) return;
            const std::size_t begin = k * cfg.chunk_size;
            const std::size_t end = std::min(item_count, begin + cfg.chunk_size);
            fn(k, begin, end);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
}

// Fixed-shape pairwise reduction over per-chunk partial sums. Adjacent
// partials are combined level by level; an odd tail carries up unchanged.
// Both backends produce bit-identical results for identical leaves.
double pairwise_tree_sum(std::vector<double> leaves);

}  // namespace tindb::kernels
