#pragma once

#include <cstdint>
#include <stdexcept>

namespace belyi {

// xoshiro256** seeded through splitmix64. Self-contained so that streams are
// bit-identical across compilers and standard libraries; reproducibility of
// every study depends on that.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound). Rejection sampling on the top of the
    // 64-bit stream.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::uniform_below: bound must be positive");
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Deterministic per-trial seed derivation: distinct streams for distinct
    // (base, n, trial) triples.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t n, std::uint64_t trial) {
        std::uint64_t x = base;
        std::uint64_t h = splitmix64(x);
        x = h ^ (0xa0761d6478bd642fULL * (n + 1));
        h = splitmix64(x);
        x = h ^ (0xe7037ed1a0b428dbULL * (trial + 1));
        return splitmix64(x);
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace belyi
