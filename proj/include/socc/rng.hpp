#pragma once

#include <cmath>
#include <cstdint>

namespace socc {

/// Counter-based deterministic random stream (splitmix64 core).
///
/// A stream is identified by (seed, stream, substream). Streams with
/// different identifiers are statistically independent, and the values drawn
/// from a stream do not depend on execution order or on how many worker
/// threads are running, so Monte Carlo results reproduce exactly for a fixed
/// master seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(mix(seed) ^ kPhi)) {}

    Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
        : state_(mix(mix(mix(seed) ^ mix(stream + kPhi)) ^ mix(substream + 2 * kPhi))) {}

    std::uint64_t next_u64() {
        state_ += kPhi;
        return mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1].
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t uniform_int(std::uint64_t bound) {
        // modulo bias is irrelevant at 64-bit range for the small bounds used here
        return next_u64() % bound;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    /// Poisson by product-of-uniforms inversion; fine for modest means.
    int poisson(double mean) {
        const double limit = std::exp(-mean);
        double prod = uniform_pos();
        int count = 0;
        while (prod > limit) {
            prod *= uniform_pos();
            ++count;
        }
        return count;
    }

private:
    static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

}  // namespace socc
