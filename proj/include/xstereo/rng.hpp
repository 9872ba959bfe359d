#pragma once

#include <cstdint>

namespace xs {

// SplitMix64 (Steele/Lea/Burton mixing constants). Chosen over the standard
// <random> distributions because the mapping from seed to stream is pinned
// down to the bit here, so exported corpora reproduce across platforms and
// standard-library versions.
struct SplitMix64 {
    uint64_t state = 0;

    SplitMix64() = default;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next()
    {
        state += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1), 53 mantissa bits.
    double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, bound). Modulo reduction; the bias is
    /// negligible for the small bounds used here.
    uint64_t below(uint64_t bound) { return next() % bound; }
};

/// Generator for stream `index` derived from a master seed. Streams are a
/// function of (seed, index) only, never of draw order, so per-pair work can
/// be scheduled freely without perturbing the output.
inline SplitMix64 derive_stream(uint64_t seed, uint64_t index)
{
    return SplitMix64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
}

} // namespace xs
