// Self-contained deterministic PRNG. std:: distributions are
// implementation-defined, so every draw used in resampling and synthesis
// goes through these routines to keep outputs bit-stable across platforms.
#pragma once

#include <cmath>
#include <cstdint>

namespace invnet {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64 step
    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal, Box-Muller (cosine branch only).
    double normal() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0,1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    // Knuth's product method; fine for the small lambdas used here.
    int poisson(double lambda) {
        const double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

private:
    std::uint64_t state_;
};

// Seed for substream `index` of a family hanging off `root`. Replica b of the
// bootstrap family uses substream_seed(root, 0, b); the null-resample family
// runs under family tag 1 so the two never collide.
inline std::uint64_t substream_seed(std::uint64_t root, std::uint64_t family, std::uint64_t index) {
    std::uint64_t base = root;
    for (std::uint64_t i = 0; i < family; ++i) {
        Rng r(base);
        base = r.next_u64();
    }
    return base ^ index;
}

}  // namespace invnet
