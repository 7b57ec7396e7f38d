#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tracelab {

/// Thread cap: min(hardware, TRACE_LAB_THREADS).  The env var may lower or
/// raise the count (values < 1 are treated as 1).
inline unsigned thread_limit() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("TRACE_LAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env) return static_cast<unsigned>(v < 1 ? 1 : v);
    }
    return hw;
}

/// Deterministic parallel reduction.  The index range [0, total) is split
/// into chunks whose boundaries depend only on `total` and `grain`, never on
/// the thread count; per-chunk results are combined in chunk order.  `work`
/// maps (begin, end) to a partial result, `combine` folds partials into the
/// accumulator.  Running with 1 or 64 threads therefore produces identical
/// results, including for order-sensitive floating-point sums.
template <typename Result, typename Work, typename Combine>
Result chunked_reduce(std::uint64_t total, Result init, Work work, Combine combine,
                      std::uint64_t grain = 1024) {
    if (total == 0) return init;
    if (grain == 0) grain = 1;
    std::uint64_t chunks = (total + grain - 1) / grain;
    if (chunks > 4096) {
        chunks = 4096;
        grain = (total + chunks - 1) / chunks;
        chunks = (total + grain - 1) / grain;
    }

    unsigned threads = thread_limit();
    if (threads > chunks) threads = static_cast<unsigned>(chunks);

    std::vector<Result> partial(static_cast<std::size_t>(chunks), init);
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            std::uint64_t b = c * grain;
            std::uint64_t e = b + grain < total ? b + grain : total;
            partial[static_cast<std::size_t>(c)] = work(b, e);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto body = [&]() {
            for (;;) {
                std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                std::uint64_t b = c * grain;
                std::uint64_t e = b + grain < total ? b + grain : total;
                partial[static_cast<std::size_t>(c)] = work(b, e);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
        for (auto& th : pool) th.join();
    }

    Result acc = init;
    for (std::uint64_t c = 0; c < chunks; ++c)
        acc = combine(acc, partial[static_cast<std::size_t>(c)]);
    return acc;
}

} // namespace tracelab
