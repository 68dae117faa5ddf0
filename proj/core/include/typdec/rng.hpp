// Copyright 2026 The typdec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace typdec {

/// Seedable generator with a fixed algorithm so draw sequences replay
/// identically across platforms and standard libraries.
///
/// The engine is xoshiro256** (Blackman & Vigna). The 256-bit state is
/// expanded from the 64-bit seed with splitmix64. `uniform()` maps the top
/// 53 bits of a draw onto [0, 1). Changing any of this breaks replay of
/// every recorded run, so don't.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept;

    std::uint64_t next_u64() noexcept;

    /// Uniform double in [0, 1).
    double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const noexcept { return seed_; }

    // UniformRandomBitGenerator
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next_u64(); }

    bool operator==(const Rng&) const = default;

private:
    std::uint64_t seed_ = 0;
    std::array<std::uint64_t, 4> s_{};
};

/// splitmix64 finalizer. Also used as the mixing function for hash-derived
/// scores and embeddings.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Maps a 64-bit hash onto [0, 1) using its top 53 bits.
constexpr double unit_from_hash(std::uint64_t h) noexcept {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace typdec
