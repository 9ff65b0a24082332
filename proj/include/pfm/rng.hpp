#pragma once

#include <cstdint>
#include <random>

namespace pfm {

// All sampling in the library draws from a 64-bit Mersenne Twister
// (period 2^19937 - 1). Independent streams are obtained by seeding separate
// engines with derive_seed().
using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood). Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

// Seed for stream `index` under `master`. Depends only on the pair, so trial
// streams are reproducible regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace pfm
