#pragma once

#include <cstdint>
#include <random>

namespace expert {

// SplitMix64 finalizer. Bijective on 64-bit words, so distinct inputs give
// distinct seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed of episode `index` under `master_seed`. Pure function of its inputs,
// which is what makes Monte Carlo results independent of scheduling.
constexpr std::uint64_t episode_seed(std::uint64_t master_seed,
                                     std::uint64_t index) noexcept {
    return splitmix64(master_seed ^ splitmix64(index));
}

using Engine = std::mt19937_64;

}  // namespace expert
