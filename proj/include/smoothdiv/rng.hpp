// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace smoothdiv {

/// SplitMix64 step (Steele, Lea & Flood 2014). Used for state expansion.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ (Blackman & Vigna 2019) with per-stream seeding.
///
/// A (seed, stream) pair fully determines the output sequence; distinct
/// stream indices yield statistically independent substreams. All draws
/// are specified bit for bit given IEEE-754 doubles, so a fixed seed
/// reproduces identical samples on any platform up to the rounding of
/// the platform's log/sqrt/pow (sqrt is correctly rounded everywhere;
/// log and pow may differ in the last ulp between C libraries).
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        SplitMix64 sm(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
        for (auto& word : state_) word = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) by rejection; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

    /// Standard normal via the Marsaglia polar method; the spare draw is
    /// discarded so the consumption pattern stays stream-local.
    double next_normal() {
        while (true) {
            const double x = 2.0 * next_double() - 1.0;
            const double y = 2.0 * next_double() - 1.0;
            const double r2 = x * x + y * y;
            if (r2 > 0.0 && r2 < 1.0) return x * std::sqrt(-2.0 * std::log(r2) / r2);
        }
    }

    /// Gamma(shape, rate) draw via Marsaglia & Tsang (2000) squeeze
    /// rejection; shape < 1 is boosted through Gamma(shape + 1).
    double next_gamma(double shape, double rate) {
        if (shape < 1.0) {
            const double g = next_gamma(shape + 1.0, rate);
            double u;
            do {
                u = next_double();
            } while (u == 0.0);
            return g * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        while (true) {
            const double x = next_normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = next_double();
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v / rate;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace smoothdiv
