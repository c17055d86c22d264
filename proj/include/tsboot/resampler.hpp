#pragma once

#include "tsboot/blocks.hpp"
#include "tsboot/models.hpp"
#include "tsboot/spec.hpp"
#include "tsboot/time_series.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsboot {

/// Anything that turns a series into an ordered replicate sequence. The
/// compliance checker is written against this interface.
class Bootstrapper {
public:
    virtual ~Bootstrapper() = default;

    [[nodiscard]] virtual const ResamplerSpec& spec() const = 0;

    [[nodiscard]] virtual std::vector<BootstrapReplicate> bootstrap(
        const TimeSeries& series, const RunConfig& config) const = 0;
};

// ---------------------------------------------------------------------------
// Shared block machinery
// ---------------------------------------------------------------------------

/// A contiguous run of output rows copied from one block.
struct BlockSegment {
    std::size_t offset = 0;  // first output row
    std::size_t length = 0;  // rows actually emitted (last block may be truncated)
    Block block;             // source block before truncation
};

struct BlockSample {
    Matrix values;
    std::vector<std::size_t> indices;  // source row per output row
    std::vector<BlockSegment> segments;
    bool wrap = false;
};

/// Block-resamples `source` into `out_length` rows using a block-family spec
/// (the four pure regimes or TaperedBlock). When tapering, rows become
/// center + w (x - center) with `taper_center` holding one value per column.
[[nodiscard]] BlockSample block_resample(const Matrix& source, const ResamplerSpec& block_spec,
                                         std::size_t out_length, RngStream& rng,
                                         std::span<const double> taper_center = {});

struct TaperSpec {
    WindowKind kind = WindowKind::Bartlett;
    double tukey_alpha = 0.5;
};

/// One block-bootstrap replicate of `series`. Tapering is applied to
/// deviations from the full-series channel means.
[[nodiscard]] BootstrapReplicate block_bootstrap_replicate(const TimeSeries& series,
                                                           BlockRegime regime,
                                                           const BlockLengthSampler& lengths,
                                                           std::optional<TaperSpec> window,
                                                           RngStream& rng);

// ---------------------------------------------------------------------------
// Model-based replicates
// ---------------------------------------------------------------------------

enum class Variant { Whole, Block };

/// Per-channel AR fits sharing one order so residual rows can be drawn jointly.
struct ArFitSet {
    std::size_t order = 1;
    std::vector<FittedArModel> models;
    Matrix centered_residuals;  // (n - order) x d, each column mean zero
    std::vector<double> channel_means;
    bool stationary = true;
};

/// Fits every channel. With no explicit order, each channel's order is chosen
/// by select_ar_order over 1..max_order and the largest is used for all.
/// Channels with a rank-deficient design fall back to the mean model.
[[nodiscard]] ArFitSet fit_ar_channels(const TimeSeries& series, std::optional<std::size_t> order,
                                       std::optional<std::size_t> max_order);

/// x*_t = x_t for t < p, then x*_t = c + sum_j phi_j x*_{t-j} + e*_t with e*
/// drawn from the centred residuals (iid for Whole, through `inner` for
/// Block). Indices are residual rows (t + p provenance); the first p are -1.
[[nodiscard]] BootstrapReplicate residual_bootstrap_replicate(const TimeSeries& series,
                                                              const ArFitSet& fit, Variant variant,
                                                              const ResamplerSpec* inner,
                                                              RngStream& rng);

/// Iid row resample (Whole) or inner block resample (Block), then a per-channel
/// affine adjustment matching the preserved statistic of the original.
/// Redraws up to kMaxDegenerateRedraws times when a Std adjustment meets a
/// zero-variance replicate, then throws DegenerateReplicate.
[[nodiscard]] BootstrapReplicate statistic_preserving_replicate(const TimeSeries& series,
                                                                PreservedStatistic statistic,
                                                                Variant variant,
                                                                const ResamplerSpec* inner,
                                                                RngStream& rng);

inline constexpr int kMaxDegenerateRedraws = 10;

/// Whole: n iid draws from per-channel fits to the full series (`fits`).
/// Block: an inner block layout; each selected block is refitted and its rows
/// redrawn from that fit. Indices follow channel 0.
[[nodiscard]] BootstrapReplicate distribution_replicate(const TimeSeries& series,
                                                        const std::vector<FittedDistribution>& fits,
                                                        DistributionKind kind, Variant variant,
                                                        const ResamplerSpec* inner, RngStream& rng);

/// Chains fitted by fit_block_markov emit whole stored blocks.
struct BlockMarkovFit {
    std::size_t block_length = 1;
    std::vector<MarkovChainModel> chains;  // per channel, over block means
};

[[nodiscard]] BlockMarkovFit fit_block_markov(const TimeSeries& series, std::size_t block_length,
                                              std::optional<std::size_t> n_states);

[[nodiscard]] BootstrapReplicate markov_replicate(const std::vector<MarkovChainModel>& chains,
                                                  std::size_t n, RngStream& rng);

[[nodiscard]] BootstrapReplicate block_markov_replicate(const TimeSeries& series,
                                                        const BlockMarkovFit& fit, RngStream& rng);

inline constexpr std::size_t kSieveBurnIn = 100;

/// Recursive AR simulation started at the channel means; the first
/// kSieveBurnIn steps are discarded.
[[nodiscard]] BootstrapReplicate sieve_replicate(const TimeSeries& series, const ArFitSet& fit,
                                                 Variant variant, const ResamplerSpec* inner,
                                                 RngStream& rng);

// ---------------------------------------------------------------------------
// Unified entry point
// ---------------------------------------------------------------------------

/// Artifacts fitted once per (series, spec). Immutable; replicate() is safe to
/// call concurrently.
class FittedResampler {
public:
    [[nodiscard]] BootstrapReplicate replicate(std::uint64_t seed, std::size_t ordinal,
                                               bool return_indices) const;

    [[nodiscard]] const ResamplerSpec& spec() const noexcept;
    [[nodiscard]] const TimeSeries& series() const noexcept;
    /// Present for residual and sieve methods.
    [[nodiscard]] const ArFitSet* ar_fit() const noexcept;
    /// Non-fatal fit diagnostics, e.g. a non-stationary sieve fit.
    [[nodiscard]] const std::vector<std::string>& warnings() const noexcept;

private:
    friend class Resampler;
    struct State;
    explicit FittedResampler(std::shared_ptr<const State> state) : state_(std::move(state)) {}
    std::shared_ptr<const State> state_;
};

class Resampler final : public Bootstrapper {
public:
    /// Normalizes the spec; throws Error(InvalidSpec).
    explicit Resampler(ResamplerSpec spec);

    [[nodiscard]] const ResamplerSpec& spec() const override { return spec_; }

    /// Validates the series, checks feasibility, and fits the method's models.
    [[nodiscard]] FittedResampler fit(const TimeSeries& series) const;

    [[nodiscard]] std::vector<BootstrapReplicate> bootstrap(const TimeSeries& series,
                                                            const RunConfig& config) const override;

    /// Streams replicates to `sink` in ordinal order. At most one batch of
    /// replicates (a small multiple of the thread count) is held at a time.
    void generate(const TimeSeries& series, const RunConfig& config,
                  const std::function<void(BootstrapReplicate&&)>& sink) const;

private:
    ResamplerSpec spec_;
};

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace tsboot
