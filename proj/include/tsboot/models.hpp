#pragma once

#include "tsboot/rng.hpp"
#include "tsboot/spec.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace tsboot {

// ---------------------------------------------------------------------------
// Autoregressive models
// ---------------------------------------------------------------------------

/// x_t = intercept + sum_j coefficients[j-1] * x_{t-j} + residuals[t - order]
struct FittedArModel {
    std::size_t order = 1;
    double intercept = 0.0;
    std::vector<double> coefficients;
    std::vector<double> residuals;  // length n - order
    double sigma2 = 0.0;            // RSS / (n - order)
    std::size_t channel = 0;
    bool mean_only = false;         // fallback model: zero coefficients, intercept = mean

    /// One-step prediction from the `order` most recent values, oldest first.
    [[nodiscard]] double predict(std::span<const double> history) const;
};

/// Ordinary least squares regression of x_t on (1, x_{t-1}, ..., x_{t-p}).
/// Requires n >= p + 2 (InsufficientData) and a full-rank lag matrix
/// (SingularDesign).
[[nodiscard]] FittedArModel fit_ar(std::span<const double> series, std::size_t order,
                                   std::size_t channel = 0);

/// Mean model with the same residual layout as an AR(order) fit: coefficients
/// are zero, the intercept is the series mean, residuals are deviations.
[[nodiscard]] FittedArModel fit_mean_model(std::span<const double> series, std::size_t order,
                                           std::size_t channel = 0);

/// fit_ar, degrading to fit_mean_model on SingularDesign.
[[nodiscard]] FittedArModel fit_ar_or_mean(std::span<const double> series, std::size_t order,
                                           std::size_t channel = 0);

enum class OrderCriterion { Aic, Bic };

/// Information criterion for orders 1..p_max evaluated on the common sample
/// t = p_max..n-1 (n_eff = n - p_max):
///   AIC(p) = n_eff ln(RSS_p / n_eff) + 2 (p + 1)
///   BIC(p) = n_eff ln(RSS_p / n_eff) + (p + 1) ln(n_eff)
/// RSS is floored at 1e-12 of the centred total sum of squares so that an
/// exact fit at several orders compares as a tie. Element k holds order k + 1.
[[nodiscard]] std::vector<double> order_criteria(std::span<const double> series, std::size_t p_max,
                                                 OrderCriterion criterion);

/// Residual sums of squares for orders 1..p_max on the common sample.
[[nodiscard]] std::vector<double> common_sample_rss(std::span<const double> series,
                                                    std::size_t p_max);

/// argmin of order_criteria, ties toward the smaller order. Throws
/// SingularDesign when even the order-1 design is rank deficient.
[[nodiscard]] std::size_t select_ar_order(std::span<const double> series, std::size_t p_max,
                                          OrderCriterion criterion = OrderCriterion::Bic);

/// min(10, n / 4), at least 1.
[[nodiscard]] std::size_t default_max_ar_order(std::size_t n) noexcept;

/// True when every root of the characteristic polynomial lies strictly outside
/// the unit circle (companion eigenvalues strictly inside).
[[nodiscard]] bool is_stationary(std::span<const double> coefficients);

// ---------------------------------------------------------------------------
// Marginal distributions
// ---------------------------------------------------------------------------

struct FittedDistribution {
    DistributionKind kind = DistributionKind::Gaussian;
    double mu = 0.0;
    double sigma = 0.0;                        // MLE (divide by n)
    std::vector<double> sorted_values;         // Empirical only
    std::vector<std::size_t> source_positions; // original position of sorted_values[k]
};

[[nodiscard]] FittedDistribution fit_distribution(std::span<const double> values,
                                                  DistributionKind kind);

struct DistributionSample {
    std::vector<double> values;
    std::vector<std::int64_t> source_indices;  // kNoSourceIndex for Gaussian draws
};

[[nodiscard]] DistributionSample sample_distribution(const FittedDistribution& dist,
                                                     std::size_t count, RngStream& rng);

// ---------------------------------------------------------------------------
// Markov chains over quantile-discretized values
// ---------------------------------------------------------------------------

/// Smoothing added to every transition count.
inline constexpr double kDefaultMarkovSmoothing = 0.5;

/// min(10, ceil(sqrt(n))).
[[nodiscard]] std::size_t default_state_count(std::size_t n) noexcept;

/// Nearest-rank quantile of an ascending sorted, non-empty vector.
[[nodiscard]] double nearest_rank(std::span<const double> sorted, double q);

struct MarkovChainModel {
    std::size_t n_states = 1;
    std::vector<double> bin_edges;                    // n_states - 1 increasing cut points
    std::vector<std::vector<double>> transition;      // row-stochastic
    std::vector<double> initial;
    std::vector<std::vector<double>> state_values;
    std::vector<std::vector<std::size_t>> state_sources;  // original index of state_values

    /// State of `value`: the number of bin edges strictly below it.
    [[nodiscard]] std::size_t state_of(double value) const;
};

/// Row-normalized smoothed counts of consecutive transitions:
/// P[i][j] = (count_ij + alpha) / (sum_j count_ij + S alpha).
[[nodiscard]] std::vector<std::vector<double>> estimate_transitions(
    std::span<const std::size_t> states, std::size_t n_states, double alpha);

/// Discretizes by nearest-rank S-quantile edges (duplicate edges collapse and
/// empty states are dropped, so the fitted state count may be below S), then
/// estimates the chain over consecutive states.
[[nodiscard]] MarkovChainModel fit_markov(std::span<const double> series, std::size_t n_states,
                                          double alpha = kDefaultMarkovSmoothing);

struct MarkovPath {
    std::vector<double> values;
    std::vector<std::int64_t> source_indices;
    std::vector<std::size_t> states;
};

[[nodiscard]] MarkovPath sample_markov_path(const MarkovChainModel& model, std::size_t count,
                                            RngStream& rng);

/// Inverse-CDF draw from a probability vector.
[[nodiscard]] std::size_t sample_categorical(std::span<const double> probabilities, RngStream& rng);

}  // namespace tsboot
