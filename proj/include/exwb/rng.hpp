#pragma once

#include <cmath>
#include <cstdint>

namespace exwb {

// Deterministic PRNG with explicitly pinned algorithms. std::mt19937 would be
// portable too, but the std distributions are not, so everything downstream of
// the seed is hand-rolled: same seed, same counts, on every platform.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman/Vigna), seeded through splitmix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_)
            word = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Standard normal via Box-Muller; consumes two uniforms per pair.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0)
            u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Independent stream for the (i,j) cell of a run with the given master seed.
// Mixing the indices through splitmix64 keeps streams decorrelated and makes
// each cell reproducible in isolation.
inline Xoshiro256 setting_stream(std::uint64_t seed, int i, int j) {
    std::uint64_t sm = seed;
    std::uint64_t mixed = splitmix64(sm);
    sm = mixed ^ (0x100000001b3ull * static_cast<std::uint64_t>(static_cast<std::int64_t>(i)));
    mixed = splitmix64(sm);
    sm = mixed ^ (0x100000001b3ull * static_cast<std::uint64_t>(static_cast<std::int64_t>(j)));
    return Xoshiro256(splitmix64(sm));
}

}  // namespace exwb
