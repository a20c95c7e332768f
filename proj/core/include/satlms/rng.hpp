#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "satlms/config.hpp"

namespace satlms {

/// SplitMix64 finalizer; a full-avalanche mix of 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-(seed, trial, salt) random stream. The stream seed is derived by
/// chaining the SplitMix64 mix over the three inputs, so every trial of an
/// ensemble gets a statistically independent engine that depends only on the
/// master seed and its own index, never on scheduling. mt19937_64 output for
/// a single-value seed is fully specified, which keeps the streams portable.
///
/// Draw-level samplers are implemented here rather than with the standard
/// <random> distributions so that the exact draw sequence is pinned down by
/// this header alone.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t salt)
        : eng_(mix64(mix64(mix64(seed) ^ trial) ^ salt)) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method (the rejected pair
    /// count varies, which is fine: the stream is private to one trial).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double v1, v2, s;
        do {
            v1 = 2.0 * uniform01() - 1.0;
            v2 = 2.0 * uniform01() - 1.0;
            s = v1 * v1 + v2 * v2;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v2 * f;
        has_spare_ = true;
        return v1 * f;
    }

    /// +1 or -1 equiprobable.
    double sign() { return (eng_() >> 63) ? 1.0 : -1.0; }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Zero-mean sampler with variance s2 for the three supported distributions.
class DistSampler {
public:
    DistSampler(Dist kind, double s2, std::uint64_t seed, std::uint64_t trial,
                std::uint64_t salt)
        : kind_(kind), sd_(std::sqrt(s2)), stream_(seed, trial, salt) {}

    double draw() {
        switch (kind_) {
            case Dist::Gaussian:
                return sd_ * stream_.gaussian();
            case Dist::Uniform:
                // [-sqrt(3) sd, sqrt(3) sd] has variance sd^2.
                return sd_ * kSqrt3 * (2.0 * stream_.uniform01() - 1.0);
            default:
                return sd_ * stream_.sign();
        }
    }

private:
    static constexpr double kSqrt3 = 1.7320508075688772935;
    Dist kind_;
    double sd_;
    RandomStream stream_;
};

} // namespace satlms
