#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace cvr {

// Stateless mixer used to derive independent sub-stream seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG; identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n); rejection keeps the distribution exact.
    int below(int n) {
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<int>(x % un);
    }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double gauss() {
        if (has_cache_) {
            has_cache_ = false;
            return cache_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        cache_ = r * std::sin(a);
        has_cache_ = true;
        return r * std::cos(a);
    }

    // Independent child stream; (seed, label) pairs map to distinct streams.
    Rng sub(std::uint64_t label) const {
        return Rng(splitmix64(splitmix64(seed_) ^ splitmix64(label + 0x51ed2701ab05c8f1ULL)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double cache_ = 0.0;
    bool has_cache_ = false;
};

}  // namespace cvr
