#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "redlb/rng.hpp"

using redlb::SplitMix64;

TEST_CASE("identical seeds give identical streams") {
    SplitMix64 a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("adjacent seeds give unrelated streams") {
    SplitMix64 a(42), b(43);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
    CHECK(same == 0);
}

TEST_CASE("uniform_below stays in range and is roughly uniform") {
    SplitMix64 g(7);
    const std::uint64_t n = 10;
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const std::uint64_t v = g.uniform_below(n);
        REQUIRE(v < n);
        sum += static_cast<double>(v);
    }
    // mean (n-1)/2 = 4.5, sd of the mean ~ 0.009
    CHECK(sum / 100000 == doctest::Approx(4.5).epsilon(0.01));
}

TEST_CASE("exponential sampling has the right mean") {
    SplitMix64 g(11);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += g.exponential(2.0);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("degenerate bernoulli draws consume no state") {
    SplitMix64 a(5), b(5);
    CHECK(a.bernoulli(1.0));
    CHECK_FALSE(a.bernoulli(0.0));
    CHECK(a.next_u64() == b.next_u64());
}
