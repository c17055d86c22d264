#include "tsboot/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsboot {

std::size_t sample_truncated_geometric(double p, std::size_t max_length, RngStream& rng) {
    if (max_length <= 1 || p >= 1.0) return 1;
    // Inversion of the geometric CDF restricted to [1, max_length]; identical in
    // law to redrawing any draw above max_length.
    const double log_q = std::log1p(-p);
    const double mass = -std::expm1(static_cast<double>(max_length) * log_q);
    const double u = rng.uniform01();
    const double k = std::ceil(std::log1p(-u * mass) / log_q);
    if (!(k >= 1.0)) return 1;
    return std::min(max_length, static_cast<std::size_t>(k));
}

std::vector<std::size_t> sample_block_lengths(const BlockLengthSampler& sampler,
                                              std::size_t target, RngStream& rng,
                                              std::size_t max_length) {
    if (max_length == 0) max_length = target;
    std::vector<std::size_t> lengths;
    std::size_t total = 0;
    if (const auto* fixed = std::get_if<FixedLength>(&sampler)) {
        if (fixed->length == 0) throw std::invalid_argument("fixed block length must be positive");
        const std::size_t count = (target + fixed->length - 1) / fixed->length;
        lengths.assign(count, fixed->length);
        return lengths;
    }
    const double p = std::get<GeometricLength>(sampler).p;
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("geometric p must lie in (0, 1]");
    while (total < target) {
        const std::size_t len = sample_truncated_geometric(p, max_length, rng);
        lengths.push_back(len);
        total += len;
    }
    return lengths;
}

namespace detail {

void check_layout_lengths(BlockRegime regime, std::size_t n,
                          const std::vector<std::size_t>& lengths) {
    if (n == 0) throw Error(ErrorCode::EmptySeries, "cannot place blocks on an empty series");
    for (const std::size_t len : lengths) {
        if (len == 0) throw std::invalid_argument("block length must be positive");
        if (len > n) {
            throw Error(ErrorCode::BlockTooLong,
                        "block length exceeds series length (" + std::to_string(len) + " > " +
                            std::to_string(n) + ")");
        }
    }
    if (regime == BlockRegime::NonOverlapping && !lengths.empty() &&
        std::adjacent_find(lengths.begin(), lengths.end(), std::not_equal_to<>()) !=
            lengths.end()) {
        throw Error(ErrorCode::NonUniformLengths,
                    "non-overlapping blocks require a fixed block length");
    }
}

}  // namespace detail

std::vector<std::size_t> materialize_indices(const BlockLayout& layout, std::size_t n,
                                             std::size_t out_length) {
    if (out_length == 0) out_length = n;
    std::vector<std::size_t> indices;
    indices.reserve(out_length);
    for (const Block& b : layout.blocks) {
        for (std::size_t k = 0; k < b.length && indices.size() < out_length; ++k) {
            const std::size_t idx = b.start + k;
            indices.push_back(layout.wrap ? idx % n : idx);
        }
        if (indices.size() == out_length) break;
    }
    if (indices.size() < out_length) {
        throw std::invalid_argument("block layout does not cover the requested length");
    }
    return indices;
}

std::vector<double> raw_window(WindowKind kind, std::size_t length, double tukey_alpha) {
    if (length == 0) return {};
    if (length == 1) return {1.0};
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double denom = static_cast<double>(length - 1);
    std::vector<double> w(length);
    for (std::size_t k = 0; k < length; ++k) {
        // Evaluate on the nearer half so the window is exactly symmetric.
        const std::size_t j = std::min(k, length - 1 - k);
        const double x = static_cast<double>(j) / denom;
        switch (kind) {
            case WindowKind::Bartlett:
                w[k] = 2.0 * x;
                break;
            case WindowKind::Hanning:
                w[k] = 0.5 * (1.0 - std::cos(two_pi * x));
                break;
            case WindowKind::Hamming:
                w[k] = 0.54 - 0.46 * std::cos(two_pi * x);
                break;
            case WindowKind::Blackman:
                w[k] = 0.42 - 0.5 * std::cos(two_pi * x) + 0.08 * std::cos(2.0 * two_pi * x);
                break;
            case WindowKind::Tukey:
                if (tukey_alpha <= 0.0 || x >= tukey_alpha / 2.0) {
                    w[k] = 1.0;
                } else {
                    w[k] = 0.5 * (1.0 - std::cos(two_pi * x / tukey_alpha));
                }
                break;
        }
    }
    return w;
}

std::vector<double> window_weights(WindowKind kind, std::size_t length, double tukey_alpha) {
    std::vector<double> w = raw_window(kind, length, tukey_alpha);
    if (w.empty()) return w;
    const double peak = *std::max_element(w.begin(), w.end());
    for (double& v : w) {
        // Two-point Bartlett/Hanning/Blackman windows are identically zero.
        const double scaled = peak > 0.0 ? v / peak : 1.0;
        v = std::clamp(scaled, kMinTaperWeight, 1.0);
    }
    return w;
}

}  // namespace tsboot
