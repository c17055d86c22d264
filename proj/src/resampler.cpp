#include "tsboot/resampler.hpp"

#include "tsboot/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

namespace tsboot {

namespace {

struct BlockPlan {
    BlockRegime regime = BlockRegime::Moving;
    BlockLengthSampler lengths = FixedLength{1};
    std::optional<TaperSpec> taper;
};

BlockPlan plan_for(const ResamplerSpec& spec) {
    BlockPlan plan;
    const FixedLength fixed{spec.block_length};
    switch (spec.method) {
        case Method::MovingBlock:
            plan = {BlockRegime::Moving, fixed, std::nullopt};
            break;
        case Method::CircularBlock:
            plan = {BlockRegime::Circular, fixed, std::nullopt};
            break;
        case Method::StationaryBlock:
            plan = {BlockRegime::Stationary, GeometricLength{spec.stationary_p()}, std::nullopt};
            break;
        case Method::NonOverlappingBlock:
            plan = {BlockRegime::NonOverlapping, fixed, std::nullopt};
            break;
        case Method::TaperedBlock:
            plan = {BlockRegime::Moving, fixed, TaperSpec{spec.window, spec.tukey_alpha}};
            break;
        default:
            throw Error(ErrorCode::InvalidSpec,
                        std::string(to_string(spec.method)) + " is not a block method");
    }
    return plan;
}

BlockSample resample_blocks(const Matrix& source, const BlockPlan& plan, std::size_t out_length,
                            RngStream& rng, std::span<const double> taper_center) {
    const std::size_t m = source.rows();
    const std::size_t d = source.cols();
    const auto lengths = sample_block_lengths(plan.lengths, out_length, rng, m);
    const BlockLayout layout = generate_layout(plan.regime, m, lengths, rng);

    BlockSample out;
    out.wrap = layout.wrap;
    out.indices = materialize_indices(layout, m, out_length);
    out.values = Matrix(out_length, d);

    std::map<std::size_t, std::vector<double>> weight_cache;
    std::size_t offset = 0;
    for (const Block& block : layout.blocks) {
        if (offset >= out_length) break;
        const std::size_t emitted = std::min(block.length, out_length - offset);
        out.segments.push_back({offset, emitted, block});
        const std::vector<double>* weights = nullptr;
        if (plan.taper) {
            auto it = weight_cache.find(block.length);
            if (it == weight_cache.end()) {
                it = weight_cache
                         .emplace(block.length, window_weights(plan.taper->kind, block.length,
                                                               plan.taper->tukey_alpha))
                         .first;
            }
            weights = &it->second;
        }
        for (std::size_t k = 0; k < emitted; ++k) {
            const std::size_t row = out.indices[offset + k];
            for (std::size_t c = 0; c < d; ++c) {
                const double x = source(row, c);
                if (weights != nullptr) {
                    const double center = taper_center.empty() ? 0.0 : taper_center[c];
                    out.values(offset + k, c) = center + (*weights)[k] * (x - center);
                } else {
                    out.values(offset + k, c) = x;
                }
            }
        }
        offset += emitted;
    }
    return out;
}

std::vector<double> column_means(const Matrix& m) {
    std::vector<double> means(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) means[c] += m(r, c);
    }
    for (double& v : means) v /= static_cast<double>(m.rows());
    return means;
}

std::vector<double> column_stds(const Matrix& m, std::span<const double> means) {
    std::vector<double> stds(m.cols(), 0.0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double dev = m(r, c) - means[c];
            stds[c] += dev * dev;
        }
    }
    for (double& v : stds) v = std::sqrt(v / static_cast<double>(m.rows()));
    return stds;
}

std::vector<std::int64_t> to_signed(std::span<const std::size_t> indices, std::int64_t offset = 0) {
    std::vector<std::int64_t> out(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        out[i] = static_cast<std::int64_t>(indices[i]) + offset;
    }
    return out;
}

const ResamplerSpec& require_inner(const ResamplerSpec* inner) {
    if (inner == nullptr) {
        throw Error(ErrorCode::InvalidSpec, "block variant requires an inner block resampler");
    }
    return *inner;
}

/// Residual draws: source rows into the residual matrix plus the drawn values.
struct ResidualDraw {
    std::vector<std::size_t> rows;
    Matrix values;
};

ResidualDraw draw_residuals(const Matrix& residuals, std::size_t count, Variant variant,
                            const ResamplerSpec* inner, RngStream& rng) {
    ResidualDraw draw;
    const std::size_t m = residuals.rows();
    if (variant == Variant::Block) {
        BlockSample sample = block_resample(residuals, require_inner(inner), count, rng);
        draw.rows = std::move(sample.indices);
        draw.values = std::move(sample.values);
        return draw;
    }
    draw.rows.resize(count);
    draw.values = Matrix(count, residuals.cols());
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t row = rng.uniform_index(m);
        draw.rows[i] = row;
        for (std::size_t c = 0; c < residuals.cols(); ++c) draw.values(i, c) = residuals(row, c);
    }
    return draw;
}

void check_block_fits(const ResamplerSpec& block_spec, std::size_t available,
                      const std::string& what) {
    if (block_spec.block_length > available) {
        throw Error(ErrorCode::BlockTooLong,
                    "block length exceeds series length (" +
                        std::to_string(block_spec.block_length) + " > " + std::to_string(available) +
                        (what.empty() ? "" : " " + what) + ")");
    }
}

}  // namespace

BlockSample block_resample(const Matrix& source, const ResamplerSpec& block_spec,
                           std::size_t out_length, RngStream& rng,
                           std::span<const double> taper_center) {
    return resample_blocks(source, plan_for(block_spec), out_length, rng, taper_center);
}

BootstrapReplicate block_bootstrap_replicate(const TimeSeries& series, BlockRegime regime,
                                             const BlockLengthSampler& lengths,
                                             std::optional<TaperSpec> window, RngStream& rng) {
    const BlockPlan plan{regime, lengths, window};
    const std::vector<double> means = column_means(series.values());
    BlockSample sample = resample_blocks(series.values(), plan, series.length(), rng, means);
    BootstrapReplicate rep;
    rep.values = std::move(sample.values);
    rep.indices = to_signed(sample.indices);
    return rep;
}

// ---------------------------------------------------------------------------
// Residual and sieve
// ---------------------------------------------------------------------------

ArFitSet fit_ar_channels(const TimeSeries& series, std::optional<std::size_t> order,
                         std::optional<std::size_t> max_order) {
    const std::size_t n = series.length();
    const std::size_t d = series.channels();
    ArFitSet fit;
    if (order) {
        fit.order = *order;
    } else {
        const std::size_t p_max = max_order.value_or(default_max_ar_order(n));
        if (n < p_max + 2) {
            throw Error(ErrorCode::InsufficientData,
                        "series of length " + std::to_string(n) +
                            " is too short for order selection up to " + std::to_string(p_max));
        }
        fit.order = 1;
        for (std::size_t c = 0; c < d; ++c) {
            const std::vector<double> x = series.channel(c);
            try {
                fit.order = std::max(fit.order, select_ar_order(x, p_max));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::SingularDesign) throw;
            }
        }
    }
    const std::size_t p = fit.order;
    if (n < p + 2) {
        throw Error(ErrorCode::InsufficientData, "series of length " + std::to_string(n) +
                                                     " is too short for AR(" + std::to_string(p) +
                                                     ")");
    }
    fit.centered_residuals = Matrix(n - p, d);
    fit.channel_means = column_means(series.values());
    for (std::size_t c = 0; c < d; ++c) {
        const std::vector<double> x = series.channel(c);
        FittedArModel model = fit_ar_or_mean(x, p, c);
        const double mean = std::accumulate(model.residuals.begin(), model.residuals.end(), 0.0) /
                            static_cast<double>(model.residuals.size());
        for (std::size_t t = 0; t < model.residuals.size(); ++t) {
            fit.centered_residuals(t, c) = model.residuals[t] - mean;
        }
        if (!model.mean_only && !is_stationary(model.coefficients)) fit.stationary = false;
        fit.models.push_back(std::move(model));
    }
    return fit;
}

BootstrapReplicate residual_bootstrap_replicate(const TimeSeries& series, const ArFitSet& fit,
                                                Variant variant, const ResamplerSpec* inner,
                                                RngStream& rng) {
    const std::size_t n = series.length();
    const std::size_t d = series.channels();
    const std::size_t p = fit.order;
    const std::size_t m = n - p;
    const ResidualDraw draw = draw_residuals(fit.centered_residuals, m, variant, inner, rng);

    BootstrapReplicate rep;
    rep.values = Matrix(n, d);
    std::vector<double> path(n);
    for (std::size_t c = 0; c < d; ++c) {
        const FittedArModel& model = fit.models[c];
        for (std::size_t t = 0; t < p; ++t) path[t] = series(t, c);
        for (std::size_t t = p; t < n; ++t) {
            path[t] = model.predict(std::span<const double>(path).subspan(t - p, p)) +
                      draw.values(t - p, c);
        }
        rep.values.set_column(c, path);
    }
    std::vector<std::int64_t> indices(n, kNoSourceIndex);
    for (std::size_t t = p; t < n; ++t) {
        indices[t] = static_cast<std::int64_t>(draw.rows[t - p] + p);
    }
    rep.indices = std::move(indices);
    return rep;
}

BootstrapReplicate sieve_replicate(const TimeSeries& series, const ArFitSet& fit, Variant variant,
                                   const ResamplerSpec* inner, RngStream& rng) {
    const std::size_t n = series.length();
    const std::size_t d = series.channels();
    const std::size_t p = fit.order;
    const std::size_t total = kSieveBurnIn + n;
    const ResidualDraw draw = draw_residuals(fit.centered_residuals, total, variant, inner, rng);

    BootstrapReplicate rep;
    rep.values = Matrix(n, d);
    std::vector<double> path(p + total);
    for (std::size_t c = 0; c < d; ++c) {
        const FittedArModel& model = fit.models[c];
        std::fill(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(p),
                  fit.channel_means[c]);
        for (std::size_t s = 0; s < total; ++s) {
            path[p + s] = model.predict(std::span<const double>(path).subspan(s, p)) +
                          draw.values(s, c);
        }
        for (std::size_t t = 0; t < n; ++t) rep.values(t, c) = path[p + kSieveBurnIn + t];
    }
    std::vector<std::int64_t> indices(n);
    for (std::size_t t = 0; t < n; ++t) {
        indices[t] = static_cast<std::int64_t>(draw.rows[kSieveBurnIn + t] + p);
    }
    rep.indices = std::move(indices);
    return rep;
}

// ---------------------------------------------------------------------------
// Statistic preserving
// ---------------------------------------------------------------------------

BootstrapReplicate statistic_preserving_replicate(const TimeSeries& series,
                                                  PreservedStatistic statistic, Variant variant,
                                                  const ResamplerSpec* inner, RngStream& rng) {
    const Matrix& x = series.values();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const std::vector<double> target_mean = column_means(x);
    const std::vector<double> target_std = column_stds(x, target_mean);
    const bool match_std = statistic != PreservedStatistic::Mean;

    for (int attempt = 0; attempt <= kMaxDegenerateRedraws; ++attempt) {
        BootstrapReplicate rep;
        std::vector<std::size_t> rows;
        if (variant == Variant::Block) {
            BlockSample sample = block_resample(x, require_inner(inner), n, rng, target_mean);
            rep.values = std::move(sample.values);
            rows = std::move(sample.indices);
        } else {
            rows.resize(n);
            rep.values = Matrix(n, d);
            for (std::size_t t = 0; t < n; ++t) {
                rows[t] = rng.uniform_index(n);
                for (std::size_t c = 0; c < d; ++c) rep.values(t, c) = x(rows[t], c);
            }
        }
        const std::vector<double> mean = column_means(rep.values);
        const std::vector<double> spread = column_stds(rep.values, mean);

        bool degenerate = false;
        if (match_std) {
            for (std::size_t c = 0; c < d && !degenerate; ++c) {
                double scale = 0.0;
                for (std::size_t t = 0; t < n; ++t) scale = std::max(scale, std::abs(rep.values(t, c)));
                degenerate = !(spread[c] > 1e-12 * scale);
            }
        }
        if (degenerate) continue;

        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t t = 0; t < n; ++t) {
                double& v = rep.values(t, c);
                switch (statistic) {
                    case PreservedStatistic::Mean:
                        v += target_mean[c] - mean[c];
                        break;
                    case PreservedStatistic::Std:
                        v = mean[c] + (v - mean[c]) * (target_std[c] / spread[c]);
                        break;
                    case PreservedStatistic::MeanAndStd:
                        v = target_mean[c] + (v - mean[c]) * (target_std[c] / spread[c]);
                        break;
                }
            }
        }
        rep.indices = to_signed(rows);
        return rep;
    }
    throw Error(ErrorCode::DegenerateReplicate,
                "replicate has zero variance after " + std::to_string(kMaxDegenerateRedraws) +
                    " redraws; the standard deviation cannot be matched");
}

// ---------------------------------------------------------------------------
// Distribution
// ---------------------------------------------------------------------------

BootstrapReplicate distribution_replicate(const TimeSeries& series,
                                          const std::vector<FittedDistribution>& fits,
                                          DistributionKind kind, Variant variant,
                                          const ResamplerSpec* inner, RngStream& rng) {
    const Matrix& x = series.values();
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    BootstrapReplicate rep;
    rep.values = Matrix(n, d);
    std::vector<std::int64_t> indices(n, kNoSourceIndex);

    if (variant == Variant::Whole) {
        for (std::size_t c = 0; c < d; ++c) {
            DistributionSample s = sample_distribution(fits[c], n, rng);
            rep.values.set_column(c, s.values);
            if (c == 0) indices = std::move(s.source_indices);
        }
        rep.indices = std::move(indices);
        return rep;
    }

    const BlockSample layout = block_resample(x, require_inner(inner), n, rng);
    std::vector<std::size_t> block_rows;
    std::vector<double> block_values;
    for (const BlockSegment& seg : layout.segments) {
        block_rows.resize(seg.block.length);
        for (std::size_t k = 0; k < seg.block.length; ++k) {
            const std::size_t idx = seg.block.start + k;
            block_rows[k] = layout.wrap ? idx % n : idx;
        }
        block_values.resize(seg.block.length);
        for (std::size_t c = 0; c < d; ++c) {
            for (std::size_t k = 0; k < seg.block.length; ++k) block_values[k] = x(block_rows[k], c);
            const FittedDistribution fit = fit_distribution(block_values, kind);
            const DistributionSample s = sample_distribution(fit, seg.length, rng);
            for (std::size_t k = 0; k < seg.length; ++k) {
                rep.values(seg.offset + k, c) = s.values[k];
                if (c == 0 && s.source_indices[k] != kNoSourceIndex) {
                    indices[seg.offset + k] = static_cast<std::int64_t>(
                        block_rows[static_cast<std::size_t>(s.source_indices[k])]);
                }
            }
        }
    }
    rep.indices = std::move(indices);
    return rep;
}

// ---------------------------------------------------------------------------
// Markov
// ---------------------------------------------------------------------------

namespace {

std::size_t resolve_states(std::optional<std::size_t> requested, std::size_t available) {
    if (!requested) return std::min(default_state_count(available), available);
    if (*requested > available) {
        throw Error(ErrorCode::InsufficientData,
                    "n_states " + std::to_string(*requested) + " exceeds the " +
                        std::to_string(available) + " available observations");
    }
    return *requested;
}

}  // namespace

BlockMarkovFit fit_block_markov(const TimeSeries& series, std::size_t block_length,
                                std::optional<std::size_t> n_states) {
    const std::size_t n = series.length();
    if (block_length > n) {
        throw Error(ErrorCode::BlockTooLong, "block length exceeds series length (" +
                                                 std::to_string(block_length) + " > " +
                                                 std::to_string(n) + ")");
    }
    const std::size_t n_blocks = n / block_length;
    const std::size_t states = resolve_states(n_states, n_blocks);
    BlockMarkovFit fit;
    fit.block_length = block_length;
    std::vector<double> means(n_blocks);
    for (std::size_t c = 0; c < series.channels(); ++c) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            double sum = 0.0;
            for (std::size_t k = 0; k < block_length; ++k) sum += series(b * block_length + k, c);
            means[b] = sum / static_cast<double>(block_length);
        }
        fit.chains.push_back(fit_markov(means, states));
    }
    return fit;
}

BootstrapReplicate markov_replicate(const std::vector<MarkovChainModel>& chains, std::size_t n,
                                    RngStream& rng) {
    BootstrapReplicate rep;
    rep.values = Matrix(n, chains.size());
    for (std::size_t c = 0; c < chains.size(); ++c) {
        MarkovPath path = sample_markov_path(chains[c], n, rng);
        rep.values.set_column(c, path.values);
        if (c == 0) rep.indices = std::move(path.source_indices);
    }
    return rep;
}

BootstrapReplicate block_markov_replicate(const TimeSeries& series, const BlockMarkovFit& fit,
                                          RngStream& rng) {
    const std::size_t n = series.length();
    const std::size_t len = fit.block_length;
    const std::size_t steps = (n + len - 1) / len;
    BootstrapReplicate rep;
    rep.values = Matrix(n, series.channels());
    std::vector<std::int64_t> indices(n);
    for (std::size_t c = 0; c < fit.chains.size(); ++c) {
        const MarkovPath path = sample_markov_path(fit.chains[c], steps, rng);
        std::size_t t = 0;
        for (const std::int64_t block : path.source_indices) {
            const std::size_t start = static_cast<std::size_t>(block) * len;
            for (std::size_t k = 0; k < len && t < n; ++k, ++t) {
                rep.values(t, c) = series(start + k, c);
                if (c == 0) indices[t] = static_cast<std::int64_t>(start + k);
            }
        }
    }
    rep.indices = std::move(indices);
    return rep;
}

// ---------------------------------------------------------------------------
// Unified entry point
// ---------------------------------------------------------------------------

struct FittedResampler::State {
    ResamplerSpec spec;
    TimeSeries series;
    std::vector<double> channel_means;
    std::optional<ArFitSet> ar;
    std::vector<FittedDistribution> distributions;
    std::vector<MarkovChainModel> chains;
    std::optional<BlockMarkovFit> block_chains;
    std::vector<std::string> warnings;
};

const ResamplerSpec& FittedResampler::spec() const noexcept { return state_->spec; }
const TimeSeries& FittedResampler::series() const noexcept { return state_->series; }
const ArFitSet* FittedResampler::ar_fit() const noexcept {
    return state_->ar ? &*state_->ar : nullptr;
}
const std::vector<std::string>& FittedResampler::warnings() const noexcept {
    return state_->warnings;
}

BootstrapReplicate FittedResampler::replicate(std::uint64_t seed, std::size_t ordinal,
                                              bool return_indices) const {
    const State& s = *state_;
    const ResamplerSpec& spec = s.spec;
    const ResamplerSpec* inner = spec.inner.get();
    RngStream rng = replicate_rng(seed, ordinal);

    BootstrapReplicate rep;
    switch (spec.method) {
        case Method::MovingBlock:
        case Method::CircularBlock:
        case Method::StationaryBlock:
        case Method::NonOverlappingBlock:
        case Method::TaperedBlock: {
            const BlockPlan plan = plan_for(spec);
            rep = block_bootstrap_replicate(s.series, plan.regime, plan.lengths, plan.taper, rng);
            break;
        }
        case Method::WholeResidual:
            rep = residual_bootstrap_replicate(s.series, *s.ar, Variant::Whole, nullptr, rng);
            break;
        case Method::BlockResidual:
            rep = residual_bootstrap_replicate(s.series, *s.ar, Variant::Block, inner, rng);
            break;
        case Method::WholeStatisticPreserving:
            rep = statistic_preserving_replicate(s.series, spec.statistic, Variant::Whole, nullptr,
                                                 rng);
            break;
        case Method::BlockStatisticPreserving:
            rep = statistic_preserving_replicate(s.series, spec.statistic, Variant::Block, inner,
                                                 rng);
            break;
        case Method::WholeDistribution:
            rep = distribution_replicate(s.series, s.distributions, spec.distribution,
                                         Variant::Whole, nullptr, rng);
            break;
        case Method::BlockDistribution:
            rep = distribution_replicate(s.series, s.distributions, spec.distribution,
                                         Variant::Block, inner, rng);
            break;
        case Method::WholeMarkov:
            rep = markov_replicate(s.chains, s.series.length(), rng);
            break;
        case Method::BlockMarkov:
            rep = block_markov_replicate(s.series, *s.block_chains, rng);
            break;
        case Method::WholeSieve:
            rep = sieve_replicate(s.series, *s.ar, Variant::Whole, nullptr, rng);
            break;
        case Method::BlockSieve:
            rep = sieve_replicate(s.series, *s.ar, Variant::Block, inner, rng);
            break;
    }
    for (const double v : rep.values.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::FitFailure, "replicate " + std::to_string(ordinal) +
                                                   " diverged to a non-finite value");
        }
    }
    rep.ordinal = ordinal;
    if (!return_indices) rep.indices.reset();
    return rep;
}

Resampler::Resampler(ResamplerSpec spec) : spec_(normalize_spec(std::move(spec))) {}

FittedResampler Resampler::fit(const TimeSeries& series) const {
    validate_series(series);
    auto state = std::make_shared<FittedResampler::State>();
    state->spec = spec_;
    state->series = series;
    state->channel_means = column_means(series.values());
    const std::size_t n = series.length();
    const ResamplerSpec* inner = spec_.inner.get();

    switch (spec_.method) {
        case Method::MovingBlock:
        case Method::CircularBlock:
        case Method::StationaryBlock:
        case Method::NonOverlappingBlock:
        case Method::TaperedBlock:
            check_block_fits(spec_, n, "");
            break;
        case Method::WholeResidual:
        case Method::BlockResidual:
        case Method::WholeSieve:
        case Method::BlockSieve: {
            state->ar = fit_ar_channels(series, spec_.ar_order, spec_.max_ar_order);
            if (inner != nullptr) {
                check_block_fits(*inner, n - state->ar->order, "residuals");
            }
            const bool sieve = spec_.method == Method::WholeSieve || spec_.method == Method::BlockSieve;
            if (sieve && !state->ar->stationary) {
                state->warnings.emplace_back(
                    "NonStationaryFit: fitted AR polynomial has a root on or inside the unit circle");
            }
            break;
        }
        case Method::WholeStatisticPreserving:
            break;
        case Method::BlockStatisticPreserving:
            check_block_fits(*inner, n, "");
            break;
        case Method::WholeDistribution:
        case Method::BlockDistribution:
            if (spec_.distribution == DistributionKind::Gaussian && n < 2) {
                throw Error(ErrorCode::InsufficientData,
                            "Gaussian distribution bootstrap needs at least 2 observations");
            }
            if (inner != nullptr) check_block_fits(*inner, n, "");
            for (std::size_t c = 0; c < series.channels(); ++c) {
                state->distributions.push_back(
                    fit_distribution(series.channel(c), spec_.distribution));
            }
            break;
        case Method::WholeMarkov: {
            if (n < 2) {
                throw Error(ErrorCode::InsufficientData, "Markov bootstrap needs at least 2 observations");
            }
            const std::size_t states = resolve_states(spec_.n_states, n);
            for (std::size_t c = 0; c < series.channels(); ++c) {
                state->chains.push_back(fit_markov(series.channel(c), states));
            }
            break;
        }
        case Method::BlockMarkov:
            if (n < 2) {
                throw Error(ErrorCode::InsufficientData, "Markov bootstrap needs at least 2 observations");
            }
            state->block_chains = fit_block_markov(series, spec_.block_length, spec_.n_states);
            break;
    }
    return FittedResampler(std::move(state));
}

std::vector<BootstrapReplicate> Resampler::bootstrap(const TimeSeries& series,
                                                     const RunConfig& config) const {
    const FittedResampler fitted = fit(series);
    std::vector<BootstrapReplicate> out(config.n_bootstraps);
    parallel_for(config.n_bootstraps, config.threads, [&](std::size_t k) {
        out[k] = fitted.replicate(config.seed, k, config.return_indices);
    });
    return out;
}

void Resampler::generate(const TimeSeries& series, const RunConfig& config,
                         const std::function<void(BootstrapReplicate&&)>& sink) const {
    const FittedResampler fitted = fit(series);
    std::size_t threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max<std::size_t>(1, threads);
    const std::size_t batch = threads == 1 ? 1 : 4 * threads;
    std::vector<BootstrapReplicate> buffer;
    for (std::size_t first = 0; first < config.n_bootstraps; first += batch) {
        const std::size_t count = std::min(batch, config.n_bootstraps - first);
        buffer.assign(count, {});
        parallel_for(count, threads, [&](std::size_t k) {
            buffer[k] = fitted.replicate(config.seed, first + k, config.return_indices);
        });
        for (auto& rep : buffer) sink(std::move(rep));
    }
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = count;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace tsboot
