#pragma once

#include <cstdint>
#include <random>

namespace hetnet {

// Counter-based stream derivation: trial i draws from a generator seeded by
// a stateless hash of (master_seed, i), so estimates do not depend on how
// trials are distributed over threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_trial_rng(std::uint64_t master_seed, std::uint64_t counter) {
    std::uint64_t s = splitmix64(master_seed ^ splitmix64(counter));
    // two more rounds to decorrelate adjacent counters
    s = splitmix64(s + counter);
    return Rng(splitmix64(s));
}

}  // namespace hetnet
