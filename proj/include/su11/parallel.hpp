#ifndef SU11_PARALLEL_HPP
#define SU11_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace su11 {

inline unsigned effective_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1u;
}

// Static block partition; body(i) must write only to slot i of any shared output,
// so results are independent of the execution order.
template <typename F>
void parallel_for(std::size_t n, F&& body, int threads = -1) {
    unsigned nt = effective_threads(threads);
    if (nt <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (nt > n) nt = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = lo + chunk < n ? lo + chunk : n;
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace su11

#endif
