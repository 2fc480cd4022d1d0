#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace coopcast {

// All randomness flows through mt19937_64 plus the hand-rolled transforms
// below. The standard pins mt19937_64 output exactly, and we avoid
// std::*_distribution in library code, so equal seeds give bit-identical
// realizations on any conforming platform.

using Rng = std::mt19937_64;

// splitmix64 finalizer (Vigna). Used as the trial-seed hash.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Name of the trial-seed hash, recorded in run metadata so results can be
// reproduced outside this codebase.
inline const char* seed_hash_id() { return "splitmix64"; }

// Per-trial seed: decorrelates trials while keeping trial i reproducible
// from (master_seed, i) alone, independent of scheduling.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return splitmix64(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Exponential(1); strictly positive.
inline double exponential1(Rng& rng) {
    return -std::log1p(-uniform01(rng));
}

// Poisson(mu) by counting Exp(1) arrivals before the budget mu runs out.
// Exact for any mu (no underflow), O(mu) draws.
inline std::uint64_t poisson_count(Rng& rng, double mu) {
    if (!(mu > 0.0)) return 0;
    std::uint64_t n = 0;
    double acc = exponential1(rng);
    while (acc <= mu) {
        ++n;
        acc += exponential1(rng);
    }
    return n;
}

} // namespace coopcast
