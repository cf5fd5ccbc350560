#pragma once

#include <cstdint>
#include <random>

namespace dqc::sim {

/// Seeded 64-bit Mersenne Twister with a portable [0,1) draw. All stochastic
/// operations take an Rng& so a run is reproducible from its seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) built from the top 53 bits of one draw.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t next_u64() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dqc::sim
