#ifndef TREELAB_PARALLEL_HPP
#define TREELAB_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "treelab/rng.hpp"

namespace treelab {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Number of substream chunks for a Monte Carlo run.  Depends only on the
// sample count, never on the thread count, so estimates are reproducible
// under any --threads value.
inline std::uint64_t chunk_count_for(std::uint64_t n_samples) {
    if (n_samples == 0) return 0;
    const std::uint64_t target = 512;
    return n_samples < target ? n_samples : target;
}

// Runs `body(chunk_index, samples_in_chunk, rng)` over all chunks on a small
// worker pool and returns the per-chunk results in chunk order.  Each chunk
// owns an Rng substream derived from (seed, chunk_index).
template <class Acc, class Body>
std::vector<Acc> run_chunked(std::uint64_t n_samples, std::uint64_t seed, int threads,
                             Body body) {
    const std::uint64_t chunks = chunk_count_for(n_samples);
    std::vector<Acc> results(chunks);
    if (chunks == 0) return results;
    const std::uint64_t base = n_samples / chunks;
    const std::uint64_t remainder = n_samples % chunks;

    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t chunk = next.fetch_add(1);
            if (chunk >= chunks || failed.load()) return;
            const std::uint64_t count = base + (chunk < remainder ? 1 : 0);
            Rng rng = Rng::substream(seed, chunk);
            try {
                results[chunk] = body(chunk, count, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    const int pool = resolve_threads(threads);
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(pool));
        for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
        for (auto& w : workers) w.join();
    }
    if (failed.load()) std::rethrow_exception(error);
    return results;
}

// Parallel loop over [0, n) items returning per-item results; used for
// deterministic exact sweeps (no randomness involved).
template <class Acc, class Body>
std::vector<Acc> run_indexed(std::size_t n, int threads, Body body) {
    std::vector<Acc> results(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                results[i] = body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    const int pool = resolve_threads(threads);
    if (pool <= 1 || n <= 1) {
        worker();
    } else {
        std::vector<std::thread> workers;
        workers.reserve(static_cast<std::size_t>(pool));
        for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
        for (auto& w : workers) w.join();
    }
    if (failed.load()) std::rethrow_exception(error);
    return results;
}

}  // namespace treelab

#endif
