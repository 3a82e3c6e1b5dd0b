// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

// Seeded randomness with a portable, documented output. std::mt19937_64 has a
// standardized bit stream, but std::normal_distribution does not, so normal
// deviates are produced here by an explicit Box-Muller transform on 53-bit
// uniforms. Identical (seed, stream) pairs therefore reproduce identical
// draws on every platform.

namespace ristw {

/// SplitMix64 finalizer; mixes a 64-bit word into a well-distributed seed.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed for an independent substream. Streams are numbered per consumer
/// (e.g. one per channel matrix); the mapping is part of the output contract.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream + 1) * 0xD1B54A32D192ED03ull);
}

/// Deterministic stream of N(0,1) and CN(0,1) deviates.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream)
        : gen_(stream_seed(seed, stream)) {}

    /// Uniform double in [0,1) built from the top 53 bits of the engine.
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal deviate (Box-Muller; one cached per pair).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform(); // (0,1], keeps log() finite
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Circularly-symmetric complex normal CN(0,1): E|z|^2 = 1.
    std::complex<double> complex_normal() {
        const double re = normal();
        const double im = normal();
        return {re * M_SQRT1_2, im * M_SQRT1_2};
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace ristw
