#pragma once

#include <cmath>
#include <cstdint>

namespace dlss {

/// splitmix64: seed expander / stream splitter.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with explicit 64-bit seeding via splitmix64.  Used everywhere
/// randomness is needed so that seeded runs reproduce bit-for-bit across
/// platforms (standard-library distributions are implementation-defined and
/// are deliberately avoided).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    /// Derives an independent stream (e.g. one per chain) from a master seed.
    static Rng stream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t sm = master_seed;
        const std::uint64_t base = splitmix64(sm);
        return Rng(base ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1)));
    }

    std::uint64_t next_u64() {
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

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Exponential holding time with the given rate.
    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace dlss
