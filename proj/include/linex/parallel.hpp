#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace linex::par {

void set_threads(int n);  // n <= 0 leaves the OpenMP default in place
int max_threads();

// Row-parallel map. schedule(static) so the row->thread assignment is fixed,
// but nothing in here may depend on it anyway: each row writes only its own
// outputs.
template <typename Fn>
void for_rows(int height, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < height; ++r) fn(r);
}

// Deterministic reduction: the element range is cut into fixed-size chunks,
// each chunk is summed left to right, and the chunk sums are combined by a
// pairwise tree. The grouping depends only on n and chunk, never on the
// thread count, so the result is bit-identical serial or parallel.
template <typename Fn>
double chunked_reduce(std::size_t n, Fn&& term, std::size_t chunk = 4096) {
    if (n == 0) return 0.0;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nchunks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(c)] = s;
    }
    // pairwise combine, same tree regardless of thread count
    std::size_t width = nchunks;
    while (width > 1) {
        const std::size_t half = (width + 1) / 2;
        for (std::size_t i = 0; i + half < width; ++i)
            partial[i] += partial[i + half];
        width = half;
    }
    return partial[0];
}

}  // namespace linex::par
