#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace fsmodel {

/// Advances a SplitMix64 state and returns the next 64-bit output.
///
/// This single generator backs every randomized operation in the toolkit
/// (dataset synthesis, cross-validation shuffles) so that results are
/// reproducible bit-for-bit across platforms. Golden outputs for seed 42
/// are frozen in the README and in the test suite.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic 64-bit PRNG with uniform, bounded-integer and Gaussian draws.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        auto v = static_cast<std::uint64_t>(next_double() * static_cast<double>(bound));
        return v >= bound ? bound - 1 : v;
    }

    /// Standard normal via Box-Muller; consumes exactly two uniform draws.
    /// z = sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
    double next_gaussian();

private:
    std::uint64_t state_;
};

/// Fisher-Yates shuffle of the identity permutation [0, n), driven by
/// SplitMix64: for i = n-1 down to 1, swap index i with next_below(i + 1).
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

} // namespace fsmodel
