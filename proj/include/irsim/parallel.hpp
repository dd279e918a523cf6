#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace irsim::detail {

// Runs `body(result[b], first_item, last_item)` over fixed-size blocks of
// the item range [0, total). Blocks are claimed dynamically by workers,
// but results land in a vector indexed by block and are folded by the
// caller in block order, so every accumulated quantity is independent of
// the worker count and of scheduling. Exceptions from workers are
// rethrown on the calling thread.
template <class Block, class Body>
std::vector<Block> run_blocks(long long total, long long block_size, int workers,
                              Body&& body) {
    if (total <= 0) return {};
    if (block_size <= 0) block_size = 1;
    const long long n_blocks = (total + block_size - 1) / block_size;
    std::vector<Block> results(static_cast<std::size_t>(n_blocks));

    int n_workers = workers > 0
                        ? workers
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    if (n_workers > n_blocks) n_workers = static_cast<int>(n_blocks);

    std::atomic<long long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&]() {
        for (;;) {
            const long long b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= n_blocks || failed.load(std::memory_order_relaxed)) return;
            const long long lo = b * block_size;
            const long long hi = std::min(total, lo + block_size);
            try {
                body(results[static_cast<std::size_t>(b)], lo, hi);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return results;
}

// Compensated (Kahan) accumulator; used inside blocks so that the final
// block-ordered fold is well conditioned.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace irsim::detail
