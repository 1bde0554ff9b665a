#pragma once

#include <omp.h>

namespace hawkes {

// Global thread budget for the OpenMP kernels. Every parallel kernel in this
// project is written so that its result is bit-identical for any thread
// count: reductions happen in a fixed order (per-slot storage + pairwise
// summation), never via atomics or omp reductions over floating point.
inline int& thread_count_ref() {
    static int n = 0; // 0 = library default (omp_get_max_threads)
    return n;
}

inline void set_threads(int n) { thread_count_ref() = n; }

inline int threads() {
    int n = thread_count_ref();
    return n > 0 ? n : omp_get_max_threads();
}

} // namespace hawkes
