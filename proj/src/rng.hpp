#pragma once

#include <cmath>
#include <cstdint>

namespace slowsde {

// Counter-based generator in the SplittableRandom style: every variate is a
// pure function of (seed, stream, index), so draws are reproducible under any
// execution order and any worker count.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state0_(mix64(mix64(seed + kGoldenGamma) ^ mix64(stream ^ 0x632BE59BD9B4E019ull))) {}

    // Derives an independent child stream; used to key per-coordinate and
    // per-layer randomness without coordinating counters.
    RngStream child(std::uint64_t tag) const {
        RngStream c(*this);
        c.state0_ = mix64(state0_ ^ mix64(tag * kGoldenGamma + 0xD1B54A32D192ED03ull));
        return c;
    }

    std::uint64_t bits_at(std::uint64_t index) const {
        return mix64(state0_ + (index + 1) * kGoldenGamma);
    }

    // Uniform on (0, 1); both endpoints excluded so log() below is safe.
    double uniform_at(std::uint64_t index) const {
        return static_cast<double>(bits_at(index) >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    // Standard normal via Box-Muller (cosine branch). One variate consumes the
    // uniforms at counters 2*index and 2*index + 1.
    double normal_at(std::uint64_t index) const {
        const double u1 = uniform_at(2 * index);
        const double u2 = uniform_at(2 * index + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

private:
    std::uint64_t state0_;
};

}  // namespace slowsde
