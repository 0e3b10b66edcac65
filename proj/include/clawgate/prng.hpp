#pragma once

#include <cstdint>
#include <string_view>

namespace clawgate {

inline std::uint32_t fnv1a32(std::string_view data) {
    std::uint32_t h = 2166136261u;
    for (unsigned char c : data) {
        h ^= c;
        h *= 16777619u;
    }
    return h;
}

/// mulberry32: tiny seedable PRNG driving every template draw so a run is
/// replayable from its seed string. Not for cryptography.
class Mulberry32 {
public:
    explicit Mulberry32(std::uint32_t seed) : state_(seed) {}

    static Mulberry32 fromString(std::string_view seedString) {
        return Mulberry32(fnv1a32(seedString));
    }

    std::uint32_t nextUint32() {
        state_ += 0x6D2B79F5u;
        std::uint32_t t = state_;
        t = (t ^ (t >> 15)) * (t | 1u);
        t ^= t + (t ^ (t >> 7)) * (t | 61u);
        return t ^ (t >> 14);
    }

    /// Uniform in [0, 1).
    double next() { return nextUint32() / 4294967296.0; }

    /// Uniform index in [0, n).
    std::size_t uniformIndex(std::size_t n) {
        return static_cast<std::size_t>(next() * static_cast<double>(n));
    }

private:
    std::uint32_t state_;
};

}  // namespace clawgate
