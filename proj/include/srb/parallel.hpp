#ifndef SRB_PARALLEL_HPP
#define SRB_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace srb {

// Global worker cap, settable from the CLI (--threads). 0 = hardware default.
inline int& thread_cap() {
    static int cap = 0;
    return cap;
}

inline int effective_threads(std::size_t work_items) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = thread_cap() > 0 ? thread_cap() : static_cast<int>(hw ? hw : 1);
    if (static_cast<std::size_t>(n) > work_items) n = static_cast<int>(work_items);
    return n < 1 ? 1 : n;
}

// Static block partition of [0, n). `fn(i)` must write only to slot i of any
// shared output; reductions are done serially by the caller so results are
// independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    if (n == 0) return;
    int nt = effective_threads(n);
    if (nt == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Kahan compensated accumulator for order-stable reductions.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace srb

#endif
