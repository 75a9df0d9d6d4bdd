#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace fiidlab::rng {

// Counter-based randomness. Every draw is a pure function of
// (seed, stream, counter), so replicas and per-vertex label fields are
// reproducible regardless of evaluation order or thread count.
//
// The generator is the SplitMix64 finalizer over an affinely advanced
// counter; with the keying below each (seed, stream) pair yields an
// independent-looking sequence.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Derived key for a (seed, stream) pair.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
    return mix64(seed + kGolden * mix64(stream + kGolden));
}

// i-th value of the stream.
inline std::uint64_t at(std::uint64_t key, std::uint64_t i) {
    return mix64(key + (i + 1) * kGolden);
}

// 53-bit mantissa uniform in [0,1).
inline double to_unit(std::uint64_t u) {
    return static_cast<double>(u >> 11) * 0x1.0p-53;
}

// Well-known stream ids, kept apart so independent subsystems never collide.
enum Stream : std::uint64_t {
    kLabels        = 0x01,
    kPairing       = 0x02,
    kPermutation   = 0x03,
    kRetention     = 0x04, // + replica in the high bits
    kWalk          = 0x05,
    kWilson        = 0x06,
    kAnneal        = 0x07,
    kBootstrap     = 0x08,
};

inline std::uint64_t substream(std::uint64_t base, std::uint64_t index) {
    return base + (index << 8);
}

// Sequential view of a counter stream, for shuffles, walks and annealing.
// next_below() is Lemire's unbiased bounded sampler.
class Stream64 {
public:
    Stream64(std::uint64_t seed, std::uint64_t stream)
        : key_(stream_key(seed, stream)) {}

    std::uint64_t next_u64() { return at(key_, i_++); }

    double next_unit() { return to_unit(next_u64()); }

    std::uint32_t next_below(std::uint32_t n) {
        if (n == 0) throw std::invalid_argument("next_below: empty range");
        std::uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            const std::uint64_t threshold = (0 - std::uint64_t(n)) % n;
            while (lo < threshold) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 64);
    }

    template <class T>
    void shuffle(T* data, std::size_t n) {
        for (std::size_t i = n; i > 1; --i) {
            const std::uint32_t j = next_below(static_cast<std::uint32_t>(i));
            std::swap(data[i - 1], data[j]);
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t i_ = 0;
};

} // namespace fiidlab::rng
