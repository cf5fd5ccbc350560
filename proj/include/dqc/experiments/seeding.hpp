#pragma once

#include <cstdint>
#include <initializer_list>

namespace dqc::experiments {

/// splitmix64 finaliser.
std::uint64_t mix64(std::uint64_t x);

/// Per-task seed: the master seed folded with each key in order through
/// mix64. Stable across platforms and releases; changing it changes every
/// published CSV.
///   seed = mix(...mix(mix(master ^ c) ^ k1) ^ k2 ...)
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

/// Protocol tags used as the first key.
inline constexpr std::uint64_t kTagIpe = 1;
inline constexpr std::uint64_t kTagKitaev = 2;
inline constexpr std::uint64_t kTagPhases = 3;
inline constexpr std::uint64_t kTagResetDemo = 4;
inline constexpr std::uint64_t kTagReadout = 5;

}  // namespace dqc::experiments
