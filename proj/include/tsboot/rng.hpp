#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace tsboot {

/// SplitMix64 finalizer; a bijective 64-bit avalanche mix.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** stream. Satisfies UniformRandomBitGenerator so it can drive
/// the standard algorithms, but the library only uses the members below so
/// draws are identical across standard library implementations.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }
    result_type next() noexcept;

    /// Uniform integer in [0, bound); bound must be positive.
    std::size_t uniform_index(std::size_t bound) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() noexcept;

    /// Standard normal draw (Marsaglia polar method).
    double normal() noexcept;

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Independent stream for replicate `ordinal` under `seed`. A pure function of
/// its arguments, so replicates can be generated in any order or concurrently.
[[nodiscard]] RngStream replicate_rng(std::uint64_t seed, std::uint64_t ordinal) noexcept;

/// Secondary stream for the same replicate, separated by `domain` (> 0), used
/// when a consumer needs draws that must not perturb the replicate itself.
[[nodiscard]] RngStream derived_rng(std::uint64_t seed, std::uint64_t ordinal,
                                    std::uint64_t domain) noexcept;

}  // namespace tsboot
