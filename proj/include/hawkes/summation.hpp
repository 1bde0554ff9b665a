#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hawkes {

// Pairwise (cascade) summation over a span. Fixed reduction tree, so the
// result does not depend on how the values were produced or on thread count.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(std::span<const double>(v));
}

} // namespace hawkes
