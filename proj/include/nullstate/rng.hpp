#pragma once

#include <cstdint>

namespace nullstate {

/**
 * SplitMix64 stream generator.
 *
 * Stream splitting contract: trial k of a batch with master seed S draws
 * from SplitMix64 seeded with S + (k+1) * 0x9E3779B97F4A7C15.  Every trial
 * owns its whole stream, so serial and parallel runs consume identical
 * randomness regardless of thread count or scheduling.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 for_trial(std::uint64_t master_seed, std::uint64_t trial_index) {
        return SplitMix64(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1).
    double uniform() { return (next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

} // namespace nullstate
