#pragma once

#include <cstdint>

namespace polymat {

// Counter-based deterministic random stream. Each stream is keyed by a
// user seed plus two tag words (e.g. view and bin indices), so any ray or
// parameter block can draw from its own stream independently of evaluation
// order. Serial and parallel runs therefore produce identical bits.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t tag_a = 0,
                          std::uint64_t tag_b = 0);

    std::uint64_t next_u64();

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double();

    // Uniform in [lo, hi).
    double next_range(double lo, double hi);

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n);

    // Poisson sample with the given mean. Inversion for small means,
    // Hormann's PTRS transformed rejection otherwise. Deterministic for a
    // given stream state.
    std::uint64_t next_poisson(double mean);

private:
    std::uint64_t state_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace polymat
