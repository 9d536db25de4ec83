#pragma once

#include <cstdint>

namespace subclassical {

/**
 * SplitMix64: seedable, splittable 64-bit generator with O(1) random access
 * into its output stream. Used for every random draw in the project so that
 * trajectories and test corpora are bit-reproducible across runs and thread
 * counts.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double next_unit() { return to_unit(next()); }

    /// Derive an independent stream (fresh seed from the current one).
    SplitMix64 split() { return SplitMix64(next()); }

    /// Stateless draw: output of stream `seed` at position `position`.
    static std::uint64_t at(std::uint64_t seed, std::uint64_t position) {
        return mix(seed + (position + 1) * kGamma);
    }

    static double unit_at(std::uint64_t seed, std::uint64_t position) {
        return to_unit(at(seed, position));
    }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static double to_unit(std::uint64_t x) {
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    std::uint64_t state_;
};

} // namespace subclassical
