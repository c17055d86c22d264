#include "tsboot/models.hpp"

#include "tsboot/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsboot {

FittedDistribution fit_distribution(std::span<const double> values, DistributionKind kind) {
    if (values.empty()) {
        throw Error(ErrorCode::InsufficientData, "cannot fit a distribution to no values");
    }
    FittedDistribution dist;
    dist.kind = kind;
    const double n = static_cast<double>(values.size());
    dist.mu = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (const double v : values) ss += (v - dist.mu) * (v - dist.mu);
    dist.sigma = std::sqrt(ss / n);

    if (kind == DistributionKind::Empirical) {
        dist.source_positions.resize(values.size());
        std::iota(dist.source_positions.begin(), dist.source_positions.end(), std::size_t{0});
        std::stable_sort(dist.source_positions.begin(), dist.source_positions.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        dist.sorted_values.reserve(values.size());
        for (const std::size_t pos : dist.source_positions) dist.sorted_values.push_back(values[pos]);
    }
    return dist;
}

DistributionSample sample_distribution(const FittedDistribution& dist, std::size_t count,
                                       RngStream& rng) {
    DistributionSample out;
    out.values.resize(count);
    out.source_indices.resize(count, kNoSourceIndex);
    if (dist.kind == DistributionKind::Gaussian) {
        for (std::size_t i = 0; i < count; ++i) out.values[i] = dist.mu + dist.sigma * rng.normal();
        return out;
    }
    if (dist.sorted_values.empty()) {
        throw Error(ErrorCode::InsufficientData, "empirical distribution has no values");
    }
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = rng.uniform_index(dist.sorted_values.size());
        out.values[i] = dist.sorted_values[k];
        out.source_indices[i] = static_cast<std::int64_t>(dist.source_positions[k]);
    }
    return out;
}

}  // namespace tsboot
