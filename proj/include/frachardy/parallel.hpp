#ifndef FRACHARDY_PARALLEL_HPP
#define FRACHARDY_PARALLEL_HPP

#include <omp.h>

#include <vector>

namespace frachardy {

// Deterministic data-parallel reduction: the index range is cut into blocks
// of a fixed size, each block is summed serially, and the block partials are
// combined in block order. The result is bit-identical for any worker count.
template <class F>
double blocked_sum(long count, int workers, F&& block_free_item) {
    constexpr long B = 32;
    const long nblocks = (count + B - 1) / B;
    std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
    const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long b = 0; b < nblocks; ++b) {
        double s = 0.0;
        const long end = std::min(count, (b + 1) * B);
        for (long i = b * B; i < end; ++i) s += block_free_item(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

// Plain serial reference: natural-order accumulation, kept for testing and
// benchmarked against the blocked kernel.
template <class F>
double serial_sum(long count, F&& item) {
    double total = 0.0;
    for (long i = 0; i < count; ++i) total += item(i);
    return total;
}

} // namespace frachardy

#endif
