#include "tsboot/rng.hpp"

#include <cmath>

namespace tsboot {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t key) noexcept {
    // xoshiro state filled from a SplitMix64 sequence; never all zero.
    std::uint64_t s = key;
    for (auto& word : state_) {
        word = mix64(s);
        s += 0x9e3779b97f4a7c15ULL;
    }
}

RngStream::result_type RngStream::next() noexcept {
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

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

std::size_t RngStream::uniform_index(std::size_t bound) noexcept {
    // Lemire's nearly-divisionless bounded draw.
    const auto range = static_cast<std::uint64_t>(bound);
    u128 m = static_cast<u128>(next()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            m = static_cast<u128>(next()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

double RngStream::uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

RngStream replicate_rng(std::uint64_t seed, std::uint64_t ordinal) noexcept {
    return derived_rng(seed, ordinal, 0);
}

RngStream derived_rng(std::uint64_t seed, std::uint64_t ordinal, std::uint64_t domain) noexcept {
    const std::uint64_t key = mix64(mix64(seed) ^ mix64(ordinal + 0x632be59bd9b4e019ULL) ^
                                    rotl(mix64(domain), 17));
    return RngStream(key);
}

}  // namespace tsboot
