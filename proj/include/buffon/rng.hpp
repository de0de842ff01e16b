#pragma once

#include <cstdint>

namespace buffon {

/// 64-bit finalizer with full avalanche (the splitmix64 output function).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Counter-based random stream: every draw is addressed by (seed,
/// stream_id, index, slot) and computed by pure integer mixing, so any
/// sample can be generated independently, in any order, on any platform,
/// with identical results.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^
               mix64(stream_id + 0x9e3779b97f4a7c15ULL)) {}

    std::uint64_t word(std::uint64_t index, std::uint64_t slot) const {
        std::uint64_t x = key_;
        x = mix64(x + index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
        x = mix64(x + slot * 0x9e3779b97f4a7c15ULL);
        return x;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01(std::uint64_t index, std::uint64_t slot) const {
        return static_cast<double>(word(index, slot) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t key_;
};

/// Independent seed derived from a base seed and a role tag.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    return mix64(seed + tag * 0xbf58476d1ce4e5b9ULL + 0x94d049bb133111ebULL);
}

} // namespace buffon
