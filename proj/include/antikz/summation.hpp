#pragma once

#include <cstddef>
#include <span>

namespace antikz {

// Pairwise (cascade) summation. Order-stabilized so that reductions over mode
// lists give the same result no matter how the values were produced, and the
// rounding error grows like log(n) instead of n.
inline double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace antikz
