#pragma once

#include "tsboot/error.hpp"
#include "tsboot/rng.hpp"
#include "tsboot/spec.hpp"

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tsboot {

struct FixedLength {
    std::size_t length = 1;
};

struct GeometricLength {
    double p = 1.0;  // success probability; mean block length is 1 / p
};

using BlockLengthSampler = std::variant<FixedLength, GeometricLength>;

enum class BlockRegime { Moving, Circular, Stationary, NonOverlapping };

struct Block {
    std::size_t start = 0;
    std::size_t length = 1;
    bool operator==(const Block&) const = default;
};

struct BlockLayout {
    std::vector<Block> blocks;
    bool wrap = false;
    bool operator==(const BlockLayout&) const = default;
};

/// Draws block lengths until their sum covers `target`. Geometric draws follow
/// P(l) = p (1 - p)^(l - 1) truncated at `max_length` (default: the target).
[[nodiscard]] std::vector<std::size_t> sample_block_lengths(const BlockLengthSampler& sampler,
                                                            std::size_t target, RngStream& rng,
                                                            std::size_t max_length = 0);

/// One truncated geometric draw in [1, max_length].
[[nodiscard]] std::size_t sample_truncated_geometric(double p, std::size_t max_length,
                                                     RngStream& rng);

template <typename T>
concept IndexSource = requires(T& source, std::size_t bound) {
    { source.uniform_index(bound) } -> std::convertible_to<std::size_t>;
};

namespace detail {
void check_layout_lengths(BlockRegime regime, std::size_t n, const std::vector<std::size_t>& lengths);
}

/// Places one block per length over a series of length `n`.
///
/// Moving starts are uniform on [0, n - l]; Circular and Stationary starts are
/// uniform on [0, n) with wrap; NonOverlapping starts are drawn with
/// replacement from the grid {0, l, 2l, ...} of complete blocks (a trailing
/// partial block is never a candidate). Throws BlockTooLong when a block
/// cannot fit without wrap and NonUniformLengths when NonOverlapping is given
/// differing lengths.
template <IndexSource Source>
[[nodiscard]] BlockLayout generate_layout(BlockRegime regime, std::size_t n,
                                          const std::vector<std::size_t>& lengths, Source& rng) {
    detail::check_layout_lengths(regime, n, lengths);
    BlockLayout layout;
    layout.wrap = regime == BlockRegime::Circular || regime == BlockRegime::Stationary;
    layout.blocks.reserve(lengths.size());
    for (const std::size_t len : lengths) {
        std::size_t start = 0;
        switch (regime) {
            case BlockRegime::Moving:
                start = static_cast<std::size_t>(rng.uniform_index(n - len + 1));
                break;
            case BlockRegime::Circular:
            case BlockRegime::Stationary:
                start = static_cast<std::size_t>(rng.uniform_index(n));
                break;
            case BlockRegime::NonOverlapping:
                start = len * static_cast<std::size_t>(rng.uniform_index(n / len));
                break;
        }
        layout.blocks.push_back({start, len});
    }
    return layout;
}

/// Concatenates block indices (mod n when wrapping) and truncates to `out_length`
/// entries (default: n).
[[nodiscard]] std::vector<std::size_t> materialize_indices(const BlockLayout& layout, std::size_t n,
                                                           std::size_t out_length = 0);

/// Floor applied to every taper weight.
inline constexpr double kMinTaperWeight = 0.1;

/// Taper weights for a block of `length` observations. Raw window values are
/// scaled so the peak is 1, then clamped below at kMinTaperWeight. A length-1
/// block gets [1]; Tukey(0) is rectangular and Tukey(1) equals Hanning.
[[nodiscard]] std::vector<double> window_weights(WindowKind kind, std::size_t length,
                                                 double tukey_alpha = 0.5);

/// Unclamped, unscaled window evaluation (exposed for testing).
[[nodiscard]] std::vector<double> raw_window(WindowKind kind, std::size_t length,
                                             double tukey_alpha = 0.5);

}  // namespace tsboot
