// parallel.hpp -- bounded worker pool over contiguous index chunks.
//
// Workers write into per-chunk slots and the caller merges in chunk order,
// so results do not depend on scheduling.  GOODBSQ_THREADS caps the pool.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace goodbsq {

inline int worker_count() {
    if (const char* env = std::getenv("GOODBSQ_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs body(begin, end, chunk_index) over a partition of [0, n) into at most
// worker_count() contiguous chunks.  Returns the number of chunks used.
inline int parallel_chunks(long n, const std::function<void(long, long, int)>& body) {
    if (n <= 0) return 0;
    const int workers = std::min<long>(worker_count(), n);
    if (workers <= 1) {
        body(0, n, 0);
        return 1;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const long base = n / workers, rem = n % workers;
    long start = 0;
    for (int w = 0; w < workers; ++w) {
        const long len = base + (w < rem ? 1 : 0);
        const long lo = start, hi = start + len;
        start = hi;
        pool.emplace_back([&body, lo, hi, w] { body(lo, hi, w); });
    }
    for (auto& th : pool) th.join();
    return workers;
}

} // namespace goodbsq
