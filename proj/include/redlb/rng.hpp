#pragma once

#include <cmath>
#include <cstdint>

namespace redlb {

// Counter-based 64-bit generator (splitmix64). Replication streams are
// derived as seed + replication index; output is identical across platforms,
// which is what makes simulator output byte-stable.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double exponential(double rate) {
        // -log(1-u) in (0, inf); u < 1 keeps the log finite
        return -std::log1p(-next_double()) / rate;
    }

    bool bernoulli(double prob) {
        if (prob >= 1.0) return true;
        if (prob <= 0.0) return false;
        return next_double() < prob;
    }

    // Unbiased uniform integer in [0, n), Lemire rejection method.
    std::uint64_t uniform_below(std::uint64_t n) {
        __extension__ using uint128 = unsigned __int128;
        std::uint64_t x = next_u64();
        uint128 m = static_cast<uint128>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<uint128>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

  private:
    std::uint64_t state_;
};

}  // namespace redlb
