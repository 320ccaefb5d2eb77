#include "fsmodel/prng.hpp"

#include <cmath>
#include <numbers>

namespace fsmodel {

double SplitMix64::next_gaussian() {
    const double u1 = next_double();
    const double u2 = next_double();
    // log1p(-u1) is finite for u1 in [0, 1).
    const double radius = std::sqrt(-2.0 * std::log1p(-u1));
    return radius * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    SplitMix64 rng(seed);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(indices[i - 1], indices[j]);
    }
    return indices;
}

} // namespace fsmodel
