#pragma once

#include <cstdint>

namespace qwg {

/// SplitMix64 used in counter mode: sample i of stream `seed` is
/// mix(seed gamma-stepped i times), computed directly from (seed, i).
/// Stateless per draw, so ensembles can be partitioned across workers in
/// any order and still reproduce the exact same sequence.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t index) const {
        std::uint64_t z = seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
};

} // namespace qwg
