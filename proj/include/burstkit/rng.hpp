#pragma once

#include <cstdint>

namespace burst {

// splitmix64: tiny counter-based generator with a documented closed form
// (Steele, Lea & Flood 2014).  Chosen over std::mt19937 so that streams can
// be re-created from (seed ^ node_id) on any platform and so tests can pin
// exact output sequences.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1) with 53 random bits; never returns exactly 1.0
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // uniform in (0,1]: safe to pass through log()
    double uniform01_open0() {
        return 1.0 - uniform01();
    }
};

} // namespace burst
