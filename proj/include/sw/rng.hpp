#pragma once

#include <cstdint>

namespace sw {

// xoshiro256++ (Blackman & Vigna, 2019), state initialized from the seed
// with the splitmix64 finalizer. Both use the published constants, so the
// integer stream is reproducible across platforms and compilers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            word = z ^ (z >> 31);
        }
        seed_ = seed;
    }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform in [0,1): 53 significant bits
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform in (0,1]: safe as a log() argument
    double next_double_open0() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Independent child stream for parallel work, derived from
    // seed XOR stream-index. Never share one Rng across threads.
    Rng child(std::uint64_t stream_index) const noexcept {
        return Rng(seed_ ^ (0x9E3779B97F4A7C15ull * (stream_index + 1)));
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    std::uint64_t seed_;
};

} // namespace sw
