#pragma once

// Helpers shared by the unit and acceptance suites. Simulated data uses the
// standard library generators so the oracles never share code with the engine.

#include "tsboot/resampler.hpp"
#include "tsboot/time_series.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace tsboot::testing {

inline std::vector<double> simulate_ar(const std::vector<double>& phi, std::size_t n,
                                       std::uint64_t seed, double sigma = 1.0,
                                       std::size_t burn_in = 500) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    const std::size_t p = phi.size();
    std::vector<double> x(n + burn_in, 0.0);
    for (std::size_t t = p; t < x.size(); ++t) {
        double v = noise(gen);
        for (std::size_t j = 0; j < p; ++j) v += phi[j] * x[t - 1 - j];
        x[t] = v;
    }
    return {x.end() - static_cast<std::ptrdiff_t>(n), x.end()};
}

inline TimeSeries arange_series(std::size_t n) {
    std::vector<double> v(n);
    std::iota(v.begin(), v.end(), 0.0);
    return TimeSeries::from_vector(v);
}

inline double sample_mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_std(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double ss = 0.0;
    for (const double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline double population_std(const std::vector<double>& v) {
    const double m = sample_mean(v);
    double ss = 0.0;
    for (const double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size()));
}

/// Splits an index vector into maximal runs where each entry follows the
/// previous one (mod n when `wrap`). Returns the run lengths.
inline std::vector<std::size_t> contiguous_runs(const std::vector<std::int64_t>& idx, std::int64_t n,
                                                bool wrap) {
    std::vector<std::size_t> runs;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const bool continues =
            i > 0 && (idx[i] == idx[i - 1] + 1 || (wrap && idx[i - 1] == n - 1 && idx[i] == 0));
        if (continues) {
            ++runs.back();
        } else {
            runs.push_back(1);
        }
    }
    return runs;
}

/// True when consecutive chunks of `idx` with the given lengths are each a
/// run of consecutive source rows (mod n when `wrap`).
inline bool decomposes_into(const std::vector<std::int64_t>& idx,
                            const std::vector<std::size_t>& lengths, std::int64_t n, bool wrap) {
    std::size_t pos = 0;
    for (const std::size_t len : lengths) {
        if (pos + len > idx.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const std::int64_t prev = idx[pos + k - 1];
            const std::int64_t next = idx[pos + k];
            const std::int64_t expected = wrap ? (prev + 1) % n : prev + 1;
            if (next != expected) return false;
        }
        pos += len;
    }
    return pos == idx.size();
}

/// Sample mean of a single-channel replicate set.
inline std::vector<double> replicate_means(const std::vector<BootstrapReplicate>& reps) {
    std::vector<double> out;
    out.reserve(reps.size());
    for (const auto& r : reps) out.push_back(sample_mean(r.values.column(0)));
    return out;
}

}  // namespace tsboot::testing
