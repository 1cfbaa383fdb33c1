#pragma once

#include <cstdint>
#include <random>

namespace cismr {

// splitmix64 step; used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
    std::uint64_t s = a;
    std::uint64_t out = splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ULL;
    out ^= splitmix64(s);
    s ^= c + 0xc2b2ae3d27d4eb4fULL;
    out ^= splitmix64(s);
    s ^= d + 0x165667b19e3779f9ULL;
    out ^= splitmix64(s);
    return out;
}

// Deterministic stream. Substreams keyed by (seed, index...) are independent of
// thread scheduling, so parallel replicates reproduce the serial results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    static Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
        return Rng(mix_seed(seed, a, b, c));
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Box-Muller; consumes exactly two uniforms per call.
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    double chi2(double df) {
        std::gamma_distribution<double> g(df / 2.0, 2.0);
        return g(gen_);
    }

    int rademacher() { return (gen_() & 1ULL) ? 1 : -1; }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace cismr
