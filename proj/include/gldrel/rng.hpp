#pragma once

#include <cmath>
#include <cstdint>

namespace gldrel {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 step: advances the state and returns a scrambled output.
inline constexpr std::uint64_t splitmix_next(std::uint64_t& state) noexcept {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// One-shot 64-bit scrambler (SplitMix64 output function).
inline constexpr std::uint64_t mix64(std::uint64_t v) noexcept {
    std::uint64_t s = v;
    return splitmix_next(s);
}

inline constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

} // namespace detail

/// xoshiro256++ generator with hash-based stream seeding.
///
/// A stream is addressed by (seed, stream index). The two words are hashed
/// independently and expanded through SplitMix64 into the 256-bit state, so
/// distinct addresses land at unrelated points of the 2^256-1 orbit. The
/// sequence for a given address is identical on every run and platform.
///
/// When the antithetic flag is set, every uniform variate u is replaced by
/// its complement 1-u. The mapping swaps the half-open ends of the two
/// uniform ranges, so uniform() stays in [0,1) and uniform_pos() in (0,1].
class Rng {
  public:
    using result_type = std::uint64_t;

    Rng() : Rng(0) {}

    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept {
        std::uint64_t x = detail::mix64(seed) ^
                          detail::mix64(stream ^ 0xD1B54A32D192ED03ULL);
        for (auto& word : state_) word = detail::splitmix_next(x);
        // All-zero state is the one fixed point of xoshiro; unreachable in
        // practice but cheap to exclude.
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0)
            state_[0] = detail::kGolden;
    }

    std::uint64_t operator()() noexcept {
        const std::uint64_t result = detail::rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

    /// Uniform double in [0,1), 53 random bits.
    double uniform() noexcept {
        if (antithetic_) return 1.0 - raw_uniform_pos();
        return raw_uniform();
    }

    /// Uniform double in (0,1]; safe as a log() argument.
    double uniform_pos() noexcept {
        if (antithetic_) return 1.0 - raw_uniform();
        return raw_uniform_pos();
    }

    /// Standard normal via the Box-Muller transform (no cached second value,
    /// so the stream position is a pure function of the draw count).
    double normal() noexcept {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.28318530717958647692528676655900577 * u2);
    }

    void set_antithetic(bool on) noexcept { antithetic_ = on; }
    bool antithetic() const noexcept { return antithetic_; }

  private:
    double raw_uniform() noexcept {
        return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
    }
    double raw_uniform_pos() noexcept {
        return static_cast<double>((operator()() >> 11) + 1) * 0x1.0p-53;
    }

    std::uint64_t state_[4];
    bool antithetic_ = false;
};

} // namespace gldrel
