#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace hoadi {

// Resolve a thread-count request: 0 means "use the hardware", anything else
// is taken literally (floored at 1).
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Chunked parallel loop over [begin, end). Each worker owns a contiguous
// index range, so writers to disjoint slices need no synchronisation and
// results do not depend on scheduling.
template <typename Fn>
void parallel_for(long begin, long end, int threads, Fn&& fn) {
    const long n = end - begin;
    if (n <= 0) return;
    const int nt = std::min<long>(resolve_threads(threads), n);
    if (nt <= 1) {
        for (long i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt - 1);
    const long chunk = (n + nt - 1) / nt;
    auto run = [&fn](long lo, long hi) {
        for (long i = lo; i < hi; ++i) fn(i);
    };
    for (int t = 1; t < nt; ++t) {
        const long lo = begin + t * chunk;
        const long hi = std::min(end, lo + chunk);
        if (lo < hi) pool.emplace_back(run, lo, hi);
    }
    run(begin, std::min(end, begin + chunk));
    for (auto& th : pool) th.join();
}

}  // namespace hoadi
