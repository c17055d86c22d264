#include "support.hpp"

#include "tsboot/error.hpp"
#include "tsboot/stats.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace tsboot;

namespace {

BootstrapReplicate constant_replicate(std::size_t ordinal, double value, std::size_t n = 4) {
    BootstrapReplicate r;
    r.ordinal = ordinal;
    r.values = Matrix(n, 1, value);
    return r;
}

}  // namespace

TEST_CASE("nearest-rank quantile and percentile intervals") {
    std::vector<double> v(100);
    std::iota(v.begin(), v.end(), 1.0);
    const auto [lo, hi] = percentile_interval(v, 0.9);
    CHECK(lo == 5.0);
    CHECK(hi == 95.0);
    const auto [lo5, hi5] = percentile_interval(v, 0.5);
    CHECK(lo <= lo5);
    CHECK(hi5 <= hi);
    const std::vector<double> flat(7, 2.5);
    CHECK(percentile_interval(flat, 0.8) == std::pair<double, double>{2.5, 2.5});
    const std::vector<double> shuffled = {3, 1, 2};
    CHECK(quantile(shuffled, 0.5) == 2.0);
}

TEST_CASE("quantiles are sample elements and monotone") {
    const auto x = testing::simulate_ar({0.3}, 97, 4);
    double prev = -INFINITY;
    for (int k = 0; k <= 20; ++k) {
        const double q = quantile(x, k / 20.0);
        CHECK(std::find(x.begin(), x.end(), q) != x.end());
        CHECK(q >= prev);
        prev = q;
    }
}

TEST_CASE("summarize aggregates across replicates") {
    std::vector<BootstrapReplicate> reps = {constant_replicate(0, 1), constant_replicate(1, 2),
                                            constant_replicate(2, 3)};
    const std::vector<double> levels = {0.5};
    const ReplicateSummary s = summarize(reps, mean_of, levels);
    CHECK(s.n_replicates == 3);
    REQUIRE(s.channels.size() == 1);
    CHECK(s.channels[0].statistic_values == std::vector<double>{1, 2, 3});
    CHECK(s.channels[0].mean == doctest::Approx(2.0));
    CHECK(s.channels[0].std == doctest::Approx(1.0));
    CHECK(s.channels[0].quantiles[0].second == 2.0);

    const ReplicateSummary one = summarize(std::vector<BootstrapReplicate>{constant_replicate(0, 9)}, mean_of);
    CHECK(one.channels[0].std == 0.0);

    std::swap(reps[0], reps[2]);
    const ReplicateSummary permuted = summarize(reps, mean_of, levels);
    CHECK(permuted.channels[0].mean == doctest::Approx(s.channels[0].mean));
    CHECK(permuted.channels[0].quantiles == s.channels[0].quantiles);

    CHECK(variance_of(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(1.25));
}

TEST_CASE("bagging forecast on a constant series is degenerate") {
    const TimeSeries constant(Matrix(40, 1, 3.0));
    RunConfig cfg;
    cfg.n_bootstraps = 20;
    const std::vector<double> cov = {0.5, 0.9};
    const ForecastIntervals fc =
        bagging_forecast(constant, default_spec(Method::MovingBlock), {}, 5, cov, cfg);
    CHECK(fc.horizon == 5);
    CHECK(fc.n_models == 20);
    REQUIRE(fc.channels.size() == 1);
    for (std::size_t h = 0; h < 5; ++h) {
        CHECK(fc.channels[0].point[h] == doctest::Approx(3.0));
        for (const auto& band : fc.channels[0].bands) {
            CHECK(band.lower[h] == doctest::Approx(3.0));
            CHECK(band.upper[h] == doctest::Approx(3.0));
        }
    }
}

TEST_CASE("bagging forecast bands nest and bracket the point") {
    const TimeSeries s = TimeSeries::from_vector(testing::simulate_ar({0.7}, 300, 9));
    RunConfig cfg;
    cfg.n_bootstraps = 100;
    cfg.seed = 3;
    cfg.threads = 0;
    ResamplerSpec spec = default_spec(Method::BlockResidual);
    spec.block_length = 20;
    spec = normalize_spec(spec);
    const std::vector<double> cov = {0.5, 0.8, 0.9};
    const ForecastIntervals fc = bagging_forecast(s, spec, {}, 12, cov, cfg);
    REQUIRE(fc.channels[0].bands.size() == 3);
    const auto& b = fc.channels[0].bands;
    for (std::size_t h = 0; h < 12; ++h) {
        CHECK(b[2].lower[h] <= b[1].lower[h]);
        CHECK(b[1].lower[h] <= b[0].lower[h]);
        CHECK(b[0].lower[h] <= fc.channels[0].point[h]);
        CHECK(fc.channels[0].point[h] <= b[0].upper[h]);
        CHECK(b[0].upper[h] <= b[1].upper[h]);
        CHECK(b[1].upper[h] <= b[2].upper[h]);
    }
    // Uncertainty grows with the horizon.
    CHECK(b[1].upper[11] - b[1].lower[11] > b[1].upper[0] - b[1].lower[0]);

    const ForecastIntervals again = bagging_forecast(s, spec, {}, 12, cov, cfg);
    CHECK(again.channels[0].point == fc.channels[0].point);
}

TEST_CASE("bagging forecast validates its arguments") {
    const TimeSeries s = testing::arange_series(30);
    RunConfig cfg;
    cfg.n_bootstraps = 10;
    const std::vector<double> bad = {1.5};
    CHECK_THROWS_AS((void)bagging_forecast(s, default_spec(Method::MovingBlock), {}, 3, bad, cfg), Error);
    const std::vector<double> ok = {0.8};
    CHECK_THROWS_AS((void)bagging_forecast(s, default_spec(Method::MovingBlock), {}, 0, ok, cfg), Error);
}
