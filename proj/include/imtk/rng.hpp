#pragma once

#include <array>
#include <cstdint>
#include <cmath>

namespace imtk {

/// Deterministic random stream used by every synthesis and simulation path.
///
/// The generator is SplitMix64 and every distribution below is implemented
/// by hand on top of it. Standard-library distributions are avoided on
/// purpose: their output is implementation defined, which would break the
/// byte-identical reproducibility contract across toolchains.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    /// Raw 64-bit draw (SplitMix64 step).
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0. Rejection keeps it unbiased.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = ~0ull - (~0ull % n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    /// Standard normal via Box-Muller. Pairs are consumed one at a time so a
    /// stream's draw sequence does not depend on caller parity.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Gaussian(mean, sd). sd = 0 returns the mean exactly (no draw).
    double normal(double mean, double sd) {
        if (sd == 0.0) return mean;
        return mean + sd * normal();
    }

    /// Gaussian(mean, sd) resampled until the draw is strictly positive.
    /// sd = 0 returns the mean (which callers guarantee positive).
    double truncated_positive_normal(double mean, double sd) {
        if (sd == 0.0) return mean;
        double v;
        do {
            v = normal(mean, sd);
        } while (v <= 0.0);
        return v;
    }

    /// Uniform point on the unit sphere (Marsaglia rejection).
    std::array<double, 3> unit_vector() {
        double x, y, s;
        do {
            x = uniform(-1.0, 1.0);
            y = uniform(-1.0, 1.0);
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double f = 2.0 * std::sqrt(1.0 - s);
        return {x * f, y * f, 1.0 - 2.0 * s};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Counter-based seed splitting: child streams for trial/channel/frame
/// indices are derived from a master seed so that concurrent execution
/// cannot change any drawn value.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t z = master ^ (salt + 0x9E3779B97F4A7C15ull + (master << 6) + (master >> 2));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace imtk
