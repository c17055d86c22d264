#include "tsboot/spec.hpp"

#include "tsboot/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace tsboot {

namespace {

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view name, const std::array<Enum, N>& values, const char* what) {
    for (const Enum v : values) {
        if (iequals(name, to_string(v))) return v;
    }
    throw Error(ErrorCode::MalformedConfig, std::string("unknown ") + what + " '" +
                                                std::string(name) + "'");
}

[[noreturn]] void invalid(const std::string& message) {
    throw Error(ErrorCode::InvalidSpec, message);
}

}  // namespace

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::MovingBlock: return "MovingBlock";
        case Method::CircularBlock: return "CircularBlock";
        case Method::StationaryBlock: return "StationaryBlock";
        case Method::NonOverlappingBlock: return "NonOverlappingBlock";
        case Method::TaperedBlock: return "TaperedBlock";
        case Method::WholeResidual: return "WholeResidual";
        case Method::BlockResidual: return "BlockResidual";
        case Method::WholeStatisticPreserving: return "WholeStatisticPreserving";
        case Method::BlockStatisticPreserving: return "BlockStatisticPreserving";
        case Method::WholeDistribution: return "WholeDistribution";
        case Method::BlockDistribution: return "BlockDistribution";
        case Method::WholeMarkov: return "WholeMarkov";
        case Method::BlockMarkov: return "BlockMarkov";
        case Method::WholeSieve: return "WholeSieve";
        case Method::BlockSieve: return "BlockSieve";
    }
    return "Unknown";
}

std::string_view to_string(WindowKind w) noexcept {
    switch (w) {
        case WindowKind::Bartlett: return "Bartlett";
        case WindowKind::Hamming: return "Hamming";
        case WindowKind::Hanning: return "Hanning";
        case WindowKind::Blackman: return "Blackman";
        case WindowKind::Tukey: return "Tukey";
    }
    return "Unknown";
}

std::string_view to_string(DistributionKind k) noexcept {
    return k == DistributionKind::Gaussian ? "Gaussian" : "Empirical";
}

std::string_view to_string(PreservedStatistic s) noexcept {
    switch (s) {
        case PreservedStatistic::Mean: return "Mean";
        case PreservedStatistic::Std: return "Std";
        case PreservedStatistic::MeanAndStd: return "MeanAndStd";
    }
    return "Unknown";
}

Method parse_method(std::string_view name) { return parse_enum(name, kAllMethods, "method"); }

WindowKind parse_window(std::string_view name) {
    static constexpr std::array kinds = {WindowKind::Bartlett, WindowKind::Hamming,
                                         WindowKind::Hanning, WindowKind::Blackman,
                                         WindowKind::Tukey};
    return parse_enum(name, kinds, "window");
}

DistributionKind parse_distribution(std::string_view name) {
    static constexpr std::array kinds = {DistributionKind::Gaussian, DistributionKind::Empirical};
    return parse_enum(name, kinds, "distribution");
}

PreservedStatistic parse_statistic(std::string_view name) {
    static constexpr std::array kinds = {PreservedStatistic::Mean, PreservedStatistic::Std,
                                         PreservedStatistic::MeanAndStd};
    return parse_enum(name, kinds, "statistic");
}

bool is_block_method(Method m) noexcept {
    switch (m) {
        case Method::MovingBlock:
        case Method::CircularBlock:
        case Method::StationaryBlock:
        case Method::NonOverlappingBlock:
        case Method::TaperedBlock:
            return true;
        default:
            return false;
    }
}

bool is_composite_method(Method m) noexcept {
    switch (m) {
        case Method::BlockResidual:
        case Method::BlockStatisticPreserving:
        case Method::BlockDistribution:
        case Method::BlockMarkov:
        case Method::BlockSieve:
            return true;
        default:
            return false;
    }
}

bool operator==(const ResamplerSpec& a, const ResamplerSpec& b) {
    const bool same_inner = (!a.inner && !b.inner) || (a.inner && b.inner && *a.inner == *b.inner);
    return same_inner && a.method == b.method && a.block_length == b.block_length &&
           a.geometric_p == b.geometric_p && a.window == b.window &&
           a.tukey_alpha == b.tukey_alpha && a.ar_order == b.ar_order &&
           a.max_ar_order == b.max_ar_order && a.distribution == b.distribution &&
           a.statistic == b.statistic && a.n_states == b.n_states;
}

ResamplerSpec normalize_spec(ResamplerSpec spec) {
    if (spec.block_length < 1) invalid("block_length must be positive");
    if (spec.geometric_p) {
        const double p = *spec.geometric_p;
        if (!(p > 0.0 && p <= 1.0)) invalid("geometric_p must lie in (0, 1]");
    }
    if (!(spec.tukey_alpha >= 0.0 && spec.tukey_alpha <= 1.0)) {
        invalid("tukey_alpha must lie in [0, 1]");
    }
    if (spec.ar_order && *spec.ar_order < 1) invalid("ar_order must be positive");
    if (spec.max_ar_order && *spec.max_ar_order < 1) invalid("max_ar_order must be positive");
    if (spec.n_states && *spec.n_states < 1) invalid("n_states must be positive");

    if (is_composite_method(spec.method)) {
        if (!spec.inner) {
            ResamplerSpec inner;
            inner.method = Method::MovingBlock;
            inner.block_length = spec.block_length;
            spec.inner = std::make_shared<const ResamplerSpec>(std::move(inner));
        } else {
            if (!is_block_method(spec.inner->method)) {
                invalid("inner resampler must be a block method, got " +
                        std::string(to_string(spec.inner->method)));
            }
            spec.inner = std::make_shared<const ResamplerSpec>(normalize_spec(*spec.inner));
        }
    } else if (spec.inner) {
        invalid(std::string(to_string(spec.method)) + " does not take an inner resampler");
    }
    return spec;
}

ResamplerSpec default_spec(Method m) {
    ResamplerSpec spec;
    spec.method = m;
    return normalize_spec(std::move(spec));
}

}  // namespace tsboot
