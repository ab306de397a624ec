#pragma once

#include <cstdint>

namespace avgmix {

// Counter-based splittable random stream.
//
// Draw c of stream s under master seed m is
//     mix64(key(m, s) + GAMMA * (c + 1)),
// where mix64 is the SplitMix64 finalizer and
//     key(m, s) = mix64(m ^ mix64(GAMMA * (s + 1))).
// Each stream is therefore an ordinary SplitMix64 sequence with a
// stream-specific start state. The same (seed, stream, counter) triple
// yields the same draw on every platform, and trials can own disjoint
// streams without shared state.
class RngStream {
public:
    RngStream() = default;
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(seed ^ mix64(kGamma * (stream + 1)))), counter_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + kGamma * (++counter_)); }

    // Uniform in [0, n), unbiased via bitmask rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            std::uint64_t x = next_u64() & mask;
            if (x < n) return x;
        }
    }

    int uniform_int(int n) { return static_cast<int>(uniform_below(static_cast<std::uint64_t>(n))); }

    // Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe argument for log().
    double uniform01_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace avgmix
