#pragma once

#include <cstdint>

namespace dbsim {

// splitmix64 (Vigna, public domain). Used for seeding and stream derivation.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xoshiro256** (Blackman/Vigna, public domain), state expanded from a
// 64-bit seed through splitmix64. Satisfies UniformRandomBitGenerator.
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256ss(std::uint64_t seed = 0) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() {
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

    // Fair coin from the top bit of a fresh word.
    int coin() { return static_cast<int>(operator()() >> 63); }

    // k most significant bits of a fresh word, k in [0, 64].
    std::uint64_t bits(unsigned k) { return k == 0 ? 0 : operator()() >> (64u - k); }

    // Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t s_[4];
};

using Rng = Xoshiro256ss;

// Independent stream per trial: (seed, index) pairs are mixed before the
// state expansion, so trial i draws the same values no matter which worker
// runs it or in which order.
inline Rng trial_rng(std::uint64_t master_seed, std::uint64_t stream_index) {
    SplitMix64 mix{stream_index * 0xD1342543DE82EF95ull + 0x632BE59BD9B4E019ull};
    return Rng(master_seed ^ mix.next());
}

}  // namespace dbsim
