#ifndef RUINKIT_SUMMATION_HPP
#define RUINKIT_SUMMATION_HPP

#include <cstddef>
#include <span>

namespace ruinkit {

// Pairwise (tree) summation. The split points depend only on the length, so
// the result is independent of how callers partition work across threads.
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

} // namespace ruinkit

#endif
