#pragma once

#include "tsboot/time_series.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsboot {

enum class Method {
    MovingBlock,
    CircularBlock,
    StationaryBlock,
    NonOverlappingBlock,
    TaperedBlock,
    WholeResidual,
    BlockResidual,
    WholeStatisticPreserving,
    BlockStatisticPreserving,
    WholeDistribution,
    BlockDistribution,
    WholeMarkov,
    BlockMarkov,
    WholeSieve,
    BlockSieve,
};

inline constexpr std::array<Method, 15> kAllMethods = {
    Method::MovingBlock,         Method::CircularBlock,
    Method::StationaryBlock,     Method::NonOverlappingBlock,
    Method::TaperedBlock,        Method::WholeResidual,
    Method::BlockResidual,       Method::WholeStatisticPreserving,
    Method::BlockStatisticPreserving, Method::WholeDistribution,
    Method::BlockDistribution,   Method::WholeMarkov,
    Method::BlockMarkov,         Method::WholeSieve,
    Method::BlockSieve,
};

enum class WindowKind { Bartlett, Hamming, Hanning, Blackman, Tukey };
enum class DistributionKind { Gaussian, Empirical };
enum class PreservedStatistic { Mean, Std, MeanAndStd };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
[[nodiscard]] std::string_view to_string(WindowKind w) noexcept;
[[nodiscard]] std::string_view to_string(DistributionKind k) noexcept;
[[nodiscard]] std::string_view to_string(PreservedStatistic s) noexcept;

// Parsers are case-insensitive; they throw Error(MalformedConfig) on unknown names.
[[nodiscard]] Method parse_method(std::string_view name);
[[nodiscard]] WindowKind parse_window(std::string_view name);
[[nodiscard]] DistributionKind parse_distribution(std::string_view name);
[[nodiscard]] PreservedStatistic parse_statistic(std::string_view name);

/// The four pure block regimes plus the tapered variant.
[[nodiscard]] bool is_block_method(Method m) noexcept;
/// Block* model-based variants; these compose an inner block resampler.
[[nodiscard]] bool is_composite_method(Method m) noexcept;

/// Declarative description of one bootstrap method. Optional fields left
/// empty mean "derive from the series" (Auto) or "use the documented default".
struct ResamplerSpec {
    Method method = Method::MovingBlock;
    std::size_t block_length = 10;
    std::optional<double> geometric_p;               // default 1 / block_length
    WindowKind window = WindowKind::Bartlett;
    double tukey_alpha = 0.5;
    std::optional<std::size_t> ar_order;             // empty selects the order
    std::optional<std::size_t> max_ar_order;         // default min(10, n / 4)
    DistributionKind distribution = DistributionKind::Gaussian;
    PreservedStatistic statistic = PreservedStatistic::Mean;
    std::optional<std::size_t> n_states;             // default min(10, ceil(sqrt(n)))
    std::shared_ptr<const ResamplerSpec> inner;

    [[nodiscard]] double stationary_p() const {
        return geometric_p.value_or(1.0 / static_cast<double>(block_length));
    }

    friend bool operator==(const ResamplerSpec& a, const ResamplerSpec& b);
};

/// Checks field ranges and composition rules, filling in the default inner
/// resampler (MovingBlock with the outer block_length) for Block* variants.
/// Throws Error(InvalidSpec).
[[nodiscard]] ResamplerSpec normalize_spec(ResamplerSpec spec);

/// Spec with every parameter at its default.
[[nodiscard]] ResamplerSpec default_spec(Method m);

struct RunConfig {
    std::size_t n_bootstraps = 10;
    std::uint64_t seed = 0;
    bool return_indices = false;
    /// Worker threads for replicate generation; 0 picks hardware concurrency.
    std::size_t threads = 1;
};

/// Index value marking a row that has no single source observation.
inline constexpr std::int64_t kNoSourceIndex = -1;

struct BootstrapReplicate {
    std::size_t ordinal = 0;
    Matrix values;
    std::optional<std::vector<std::int64_t>> indices;
};

}  // namespace tsboot
