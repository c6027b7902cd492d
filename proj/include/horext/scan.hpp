#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace horext {

enum class ExecutionPolicy { Serial, Parallel };

struct ScanBest {
    double value = 0.0;
    std::size_t index = 0;
    bool valid = false;
};

namespace detail {

inline void scan_improve(ScanBest& best, double v, std::size_t i) {
    if (!best.valid || v > best.value || (v == best.value && i < best.index)) {
        best.value = v;
        best.index = i;
        best.valid = true;
    }
}

} // namespace detail

// Argmax of score(i) over i in [0, n). Ties break to the smallest index, so
// the result does not depend on iteration order; the parallel path reduces
// with exact comparisons and is the production kernel, the serial path is
// the reference kept for testing.
template <class Score>
ScanBest argmax_scan(std::size_t n, Score&& score,
                     ExecutionPolicy policy = ExecutionPolicy::Parallel) {
    ScanBest best;
    if (n == 0) return best;
    if (policy == ExecutionPolicy::Serial) {
        for (std::size_t i = 0; i < n; ++i)
            detail::scan_improve(best, score(i), i);
        return best;
    }
#pragma omp parallel
    {
        ScanBest local;
#pragma omp for nowait
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            detail::scan_improve(local, score(static_cast<std::size_t>(i)),
                                 static_cast<std::size_t>(i));
#pragma omp critical(horext_argmax_scan)
        {
            if (local.valid)
                detail::scan_improve(best, local.value, local.index);
        }
    }
    return best;
}

// Fill out[i] = fn(i) for i in [0, n); embarrassingly parallel, deterministic.
template <class Fn>
std::vector<double> map_scan(std::size_t n, Fn&& fn,
                             ExecutionPolicy policy = ExecutionPolicy::Parallel) {
    std::vector<double> out(n);
    if (policy == ExecutionPolicy::Serial) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
#pragma omp parallel for
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
}

} // namespace horext
