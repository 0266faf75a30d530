#pragma once

#include <cstdint>

namespace ibnet {

// Counter-based generator: SplitMix64 with a per-stream odd increment.
// (seed, stream_id) fully determines the sequence on every platform, and
// distinct stream ids give statistically independent streams, so sweep
// trials can be drawn out of order or in parallel.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : state_(mix(seed ^ mix(stream_id + 0x9e3779b97f4a7c15ull))),
          gamma_(mix(stream_id ^ 0xda3e39cb94b95bdbull) | 1ull) {}

    std::uint64_t next_u64() {
        state_ += gamma_;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in {0, ..., m-1} by rejection (no modulo bias).
    std::uint64_t rand_below(std::uint64_t m) {
        const std::uint64_t limit = m * ((~0ull) / m);
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % m;
    }

    // Uniform double on the open interval (0, 1).
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t gamma_;
};

}  // namespace ibnet
