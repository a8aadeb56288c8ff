#pragma once

#include <cstdint>

namespace kfreewalk {

// Counter-based SplitMix64. Draw number c (c = 0, 1, 2, ...) of a stream
// keyed by `seed` is splitmix64_mix(seed + (c + 1) * kGolden), i.e. exactly
// the output sequence of the reference SplitMix64 generator seeded with
// `seed`. Any draw can be computed without touching the others.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of trial `t` under `master_seed`.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t t) noexcept
{
    return splitmix64_mix(master_seed ^ splitmix64_mix(t + kGolden));
}

class CounterRng {
  public:
    constexpr explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    constexpr std::uint64_t at(std::uint64_t counter) const noexcept
    {
        return splitmix64_mix(seed_ + (counter + 1) * kGolden);
    }

    constexpr std::uint64_t operator()() noexcept { return at(counter_++); }

    /// Uniform in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    constexpr std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace kfreewalk
