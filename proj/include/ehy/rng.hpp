#pragma once

#include <cmath>
#include <cstdint>

namespace ehy {

/// Deterministic counter-based generator (splitmix64 core). Substreams are
/// derived by mixing the seed with stream identifiers, so per-curve and
/// per-replication draws are independent of generation order. The exact
/// sequence is fixed across platforms: uniforms come from the top 53 bits,
/// normals from Box-Muller on a pair of uniforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

    /// Independent substream keyed by up to two identifiers (replication, curve, ...).
    Rng substream(std::uint64_t a, std::uint64_t b = 0) const {
        Rng r(0);
        r.state_ = mix(mix(state_ ^ mix(a + 0x517cc1b727220a95ULL)) ^ mix(b + 0x2545f4914f6cdd1dULL));
        return r;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p = 0.5) { return uniform() < p; }

    /// Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Uniform integer in [0, bound) by rejection (bound > 0).
    std::uint64_t uniform_int(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Exponential with rate 1.
    double exponential() {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log(u);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace ehy
