#include "tsboot/stats.hpp"

#include "tsboot/error.hpp"
#include "tsboot/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tsboot {

double quantile(std::span<const double> values, double q) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return nearest_rank(sorted, q);
}

double mean_of(std::span<const double> values) {
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance_of(std::span<const double> values) {
    const double m = mean_of(values);
    double ss = 0.0;
    for (const double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size());
}

ReplicateSummary summarize(std::span<const BootstrapReplicate> replicates,
                           const Statistic& statistic, std::span<const double> quantile_levels) {
    if (replicates.empty()) throw std::invalid_argument("summarize needs at least one replicate");
    const std::size_t d = replicates.front().values.cols();
    ReplicateSummary summary;
    summary.n_replicates = replicates.size();
    summary.channels.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        ChannelSummary& ch = summary.channels[c];
        ch.statistic_values.reserve(replicates.size());
        for (const auto& rep : replicates) {
            ch.statistic_values.push_back(statistic(rep.values.column(c)));
        }
        ch.mean = mean_of(ch.statistic_values);
        if (replicates.size() > 1) {
            double ss = 0.0;
            for (const double v : ch.statistic_values) ss += (v - ch.mean) * (v - ch.mean);
            ch.std = std::sqrt(ss / static_cast<double>(replicates.size() - 1));
        }
        std::vector<double> sorted = ch.statistic_values;
        std::sort(sorted.begin(), sorted.end());
        for (const double q : quantile_levels) ch.quantiles.emplace_back(q, nearest_rank(sorted, q));
    }
    return summary;
}

std::pair<double, double> percentile_interval(std::span<const double> values, double coverage) {
    if (!(coverage > 0.0 && coverage < 1.0)) {
        throw std::invalid_argument("coverage must lie in (0, 1)");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double tail = (1.0 - coverage) / 2.0;
    return {nearest_rank(sorted, tail), nearest_rank(sorted, 1.0 - tail)};
}

ForecastIntervals bagging_forecast(const TimeSeries& series, const ResamplerSpec& resampler,
                                   const ForecasterSpec& forecaster, std::size_t horizon,
                                   std::span<const double> coverages, const RunConfig& config) {
    if (horizon < 1) throw Error(ErrorCode::InvalidSpec, "forecast horizon must be positive");
    if (config.n_bootstraps < 2) {
        throw Error(ErrorCode::InvalidSpec, "bagging forecast needs at least 2 replicates");
    }
    for (const double c : coverages) {
        if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::InvalidSpec, "coverage must lie in (0, 1)");
    }
    const FittedResampler fitted = Resampler(resampler).fit(series);
    const std::size_t d = series.channels();
    const std::size_t b_count = config.n_bootstraps;

    // paths[b][c][k]; empty when replicate b's forecaster could not be fitted.
    std::vector<std::vector<std::vector<double>>> paths(b_count);
    parallel_for(b_count, config.threads, [&](std::size_t b) {
        const BootstrapReplicate rep = fitted.replicate(config.seed, b, false);
        ArFitSet fit;
        try {
            fit = fit_ar_channels(TimeSeries(rep.values), forecaster.ar_order,
                                  forecaster.max_ar_order);
        } catch (const Error&) {
            return;
        }
        RngStream innovations = derived_rng(config.seed, b, 1);
        const std::size_t p = fit.order;
        const std::size_t m = fit.centered_residuals.rows();
        auto& out = paths[b];
        out.assign(d, std::vector<double>(horizon));
        std::vector<double> history(p + horizon);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t j = 0; j < p; ++j) history[j] = series(series.length() - p + j, c);
            for (std::size_t k = 0; k < horizon; ++k) {
                const double e = fit.centered_residuals(innovations.uniform_index(m), c);
                history[p + k] =
                    fit.models[c].predict(std::span<const double>(history).subspan(k, p)) + e;
                out[c][k] = history[p + k];
            }
        }
    });

    ForecastIntervals result;
    result.horizon = horizon;
    for (const auto& path : paths) {
        if (path.empty()) ++result.n_dropped;
    }
    result.n_models = b_count - result.n_dropped;
    if (static_cast<double>(result.n_dropped) >
        kMaxFailedFitFraction * static_cast<double>(b_count)) {
        throw Error(ErrorCode::FitFailure, std::to_string(result.n_dropped) + " of " +
                                               std::to_string(b_count) +
                                               " replicate forecasters failed to fit");
    }

    std::vector<double> column;
    result.channels.resize(d);
    for (std::size_t c = 0; c < d; ++c) {
        ChannelForecast& ch = result.channels[c];
        ch.point.resize(horizon);
        for (const double level : coverages) ch.bands.push_back({level, std::vector<double>(horizon),
                                                                 std::vector<double>(horizon)});
        for (std::size_t k = 0; k < horizon; ++k) {
            column.clear();
            for (const auto& path : paths) {
                if (!path.empty()) column.push_back(path[c][k]);
            }
            std::sort(column.begin(), column.end());
            ch.point[k] = nearest_rank(column, 0.5);
            for (auto& band : ch.bands) {
                const auto [lo, hi] = percentile_interval(column, band.coverage);
                band.lower[k] = lo;
                band.upper[k] = hi;
            }
        }
    }
    return result;
}

}  // namespace tsboot
