#ifndef LEXPCM_RNG_HPP
#define LEXPCM_RNG_HPP

#include <cstdint>

namespace lexpcm {

/// SplitMix64: a counter-based generator with published constants
/// (Steele, Lea & Flood). Streams are reproducible across platforms, and
/// substream(i) yields schedule-independent per-sample streams.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Independent stream for sample `index`, derived from the root seed only.
    SplitMix64 substream(std::uint64_t index) const {
        return SplitMix64(mix(state_ ^ (0x9E3779B97F4A7C15ULL * (index + 1))));
    }

    /// Uniform double in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) via the multiply-shift reduction.
    std::uint32_t next_below(std::uint32_t bound) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

}  // namespace lexpcm

#endif  // LEXPCM_RNG_HPP
