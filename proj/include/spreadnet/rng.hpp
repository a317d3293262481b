#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spreadnet/util.hpp"

namespace spreadnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic per-task seed derived from a master seed and a task index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

/// mt19937_64 with hand-rolled draw helpers so results do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return double(engine_() >> 11) * (1.0 / 9007199254740992.0); }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform integer in [0, n), unbiased. n must be >= 1.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw ValidationError("uniform_index over empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// Exponential with the given mean, truncated by rejection at `cap`.
    double truncated_exponential(double mean, double cap) {
        for (;;) {
            const double v = -mean * std::log(1.0 - next_double());
            if (v <= cap) return v;
        }
    }

    /// Draws an index from a discrete distribution given by nonnegative
    /// weights with positive total; linear CDF scan, ascending index order.
    std::size_t categorical(const std::vector<double>& weights, double total) {
        const double u = next_double() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return i;
        }
        // Rounding can push u past the last positive weight.
        for (std::size_t i = weights.size(); i-- > 0;) {
            if (weights[i] > 0.0) return i;
        }
        throw ValidationError("categorical draw requires a positive weight");
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace spreadnet
