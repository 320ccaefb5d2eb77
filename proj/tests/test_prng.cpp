#include "doctest.h"

#include <set>

#include "fsmodel/prng.hpp"

using namespace fsmodel;

TEST_CASE("splitmix64 golden outputs for seed 42") {
    // Frozen from an independent scalar reference implementation; also
    // published in the README so other tools can reproduce our streams.
    SplitMix64 rng(42);
    CHECK(rng.next_double() == 0.7415648787718233);
    CHECK(rng.next_double() == 0.1599103928769201);
    CHECK(rng.next_double() == 0.27860113025513866);

    SplitMix64 g(42);
    CHECK(g.next_gaussian() == doctest::Approx(0.8822489062222688).epsilon(1e-12));
}

TEST_CASE("same seed yields identical streams") {
    SplitMix64 a(1234567);
    SplitMix64 b(1234567);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge within the first ten outputs") {
    // Empirical distinctness check over 100 seed pairs.
    for (std::uint64_t s = 0; s < 100; ++s) {
        SplitMix64 a(s);
        SplitMix64 b(s + 1000003);
        bool differs = false;
        for (int i = 0; i < 10 && !differs; ++i) differs = a.next_u64() != b.next_u64();
        CHECK(differs);
    }
}

TEST_CASE("next_below stays in range and covers values") {
    SplitMix64 rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = rng.next_below(5);
        CHECK(v < 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 5);
}

TEST_CASE("shuffled_indices is a deterministic permutation") {
    const auto a = shuffled_indices(50, 99);
    const auto b = shuffled_indices(50, 99);
    CHECK(a == b);

    std::set<std::size_t> unique(a.begin(), a.end());
    CHECK(unique.size() == 50);
    CHECK(*unique.begin() == 0);
    CHECK(*unique.rbegin() == 49);

    const auto c = shuffled_indices(50, 100);
    CHECK(a != c);

    CHECK(shuffled_indices(0, 1).empty());
    CHECK(shuffled_indices(1, 1) == std::vector<std::size_t>{0});
}
