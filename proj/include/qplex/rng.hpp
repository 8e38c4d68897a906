#pragma once

#include <cstdint>
#include <random>

namespace qplex {

// Every randomized entry point is seeded explicitly and records this
// identifier in its outputs, so a run can be reproduced bit for bit.
inline constexpr const char* rng_id = "mt19937_64/u53";

// SplitMix64 finalizer. Used to spread user seeds and to derive independent
// sub-stream seeds (per shot, per probe, per retry) from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed of sub-stream (a, b) of `master`: three chained SplitMix64 steps.
// Extending a run keeps the seeds of already-computed streams unchanged.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return s;
}

// Uniform double in [0,1) from the top 53 bits of one engine draw.
// std::uniform_real_distribution is implementation defined and would not
// reproduce across standard libraries; this construction does.
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}
