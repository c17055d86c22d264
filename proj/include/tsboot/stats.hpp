#pragma once

#include "tsboot/resampler.hpp"
#include "tsboot/spec.hpp"
#include "tsboot/time_series.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace tsboot {

/// Nearest-rank quantile (no interpolation) of unsorted values.
[[nodiscard]] double quantile(std::span<const double> values, double q);

using Statistic = std::function<double(std::span<const double>)>;

[[nodiscard]] double mean_of(std::span<const double> values);
/// Population variance (divide by n).
[[nodiscard]] double variance_of(std::span<const double> values);

struct ChannelSummary {
    std::vector<double> statistic_values;  // one per replicate, ordinal order
    double mean = 0.0;
    double std = 0.0;                      // sample std (B - 1); 0 when B = 1
    std::vector<std::pair<double, double>> quantiles;  // (q, value)
};

struct ReplicateSummary {
    std::size_t n_replicates = 0;
    std::vector<ChannelSummary> channels;
};

/// Applies `statistic` to every replicate channel and aggregates across
/// replicates. Requires at least one replicate.
[[nodiscard]] ReplicateSummary summarize(std::span<const BootstrapReplicate> replicates,
                                         const Statistic& statistic,
                                         std::span<const double> quantile_levels = {});

/// (quantile((1 - coverage) / 2), quantile((1 + coverage) / 2)), nearest rank.
[[nodiscard]] std::pair<double, double> percentile_interval(std::span<const double> values,
                                                            double coverage);

struct ForecasterSpec {
    std::optional<std::size_t> ar_order;     // empty selects the order
    std::optional<std::size_t> max_ar_order;
};

struct ForecastBand {
    double coverage = 0.0;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct ChannelForecast {
    std::vector<double> point;  // per-step median across replicate forecasts
    std::vector<ForecastBand> bands;
};

struct ForecastIntervals {
    std::size_t horizon = 0;
    std::size_t n_models = 0;   // replicates whose forecaster fit succeeded
    std::size_t n_dropped = 0;
    std::vector<ChannelForecast> channels;
};

/// Bagged AR forecasts. One forecaster is fitted per replicate; each fitted
/// model produces an h-step path from the final observations of the original
/// series, with innovations drawn from that model's centred residuals. Bands
/// are per-step percentile intervals across the paths. Replicates whose fit
/// fails are dropped; more than 20% drops raises Error(FitFailure).
[[nodiscard]] ForecastIntervals bagging_forecast(const TimeSeries& series,
                                                 const ResamplerSpec& resampler,
                                                 const ForecasterSpec& forecaster,
                                                 std::size_t horizon,
                                                 std::span<const double> coverages,
                                                 const RunConfig& config);

inline constexpr double kMaxFailedFitFraction = 0.2;

}  // namespace tsboot
