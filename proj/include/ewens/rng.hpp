#pragma once
// Counter-seeded PRNG streams. Every stochastic routine in the library takes
// an RngStream; the (seed, stream) pair fully determines the output sequence,
// independent of platform and thread count. Distributions are inverted by
// hand instead of going through <random>, which does not guarantee identical
// sequences across standard library implementations.

#include <cstdint>
#include <cmath>

namespace ewens {

namespace detail {

// SplitMix64 step (Steele, Lea, Flood). Used for state derivation only.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// xoshiro256** (Blackman, Vigna), seeded from a (seed, stream) counter pair.
// Distinct stream indices give statistically independent sequences.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {
        std::uint64_t d = seed;
        std::uint64_t key = detail::splitmix64(d);
        d = key + stream * 0x9e3779b97f4a7c15ULL;
        s_[0] = detail::splitmix64(d);
        s_[1] = detail::splitmix64(d);
        s_[2] = detail::splitmix64(d);
        s_[3] = detail::splitmix64(d);
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is invalid
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Beta(1, theta) by CDF inversion: F(x) = 1 - (1-x)^theta.
    double beta_one(double theta) {
        return 1.0 - std::pow(1.0 - uniform01(), 1.0 / theta);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t s_[4];
};

}  // namespace ewens
