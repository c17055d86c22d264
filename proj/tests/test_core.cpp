#include "support.hpp"

#include "tsboot/compliance.hpp"
#include "tsboot/config.hpp"
#include "tsboot/error.hpp"
#include "tsboot/rng.hpp"
#include "tsboot/spec.hpp"
#include "tsboot/time_series.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

using namespace tsboot;

TEST_CASE("validate_series accepts finite non-empty series") {
    const TimeSeries s = testing::arange_series(10);
    CHECK(&validate_series(s) == &s);
    CHECK(s.length() == 10);
    CHECK(s.channels() == 1);
}

TEST_CASE("validate_series rejects empty input") {
    const TimeSeries empty(Matrix(0, 1));
    try {
        (void)validate_series(empty);
        FAIL("expected EmptySeries");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySeries);
    }
}

TEST_CASE("validate_series reports the first non-finite cell") {
    Matrix m(6, 2, 1.0);
    m(3, 0) = std::numeric_limits<double>::quiet_NaN();
    m(4, 1) = std::numeric_limits<double>::infinity();
    try {
        (void)validate_series(TimeSeries(m));
        FAIL("expected NonFinite");
    } catch (const NonFiniteError& e) {
        CHECK(e.code() == ErrorCode::NonFinite);
        CHECK(e.row() == 3);
        CHECK(e.col() == 0);
    }
}

namespace {
std::vector<std::uint64_t> draws(RngStream rng, int count) {
    std::vector<std::uint64_t> out;
    for (int i = 0; i < count; ++i) out.push_back(rng.next());
    return out;
}
}  // namespace

TEST_CASE("replicate streams are deterministic and distinct") {
    CHECK(draws(replicate_rng(42, 5), 1000) == draws(replicate_rng(42, 5), 1000));
    CHECK(draws(replicate_rng(42, 0), 1000) != draws(replicate_rng(42, 1), 1000));
    CHECK(draws(replicate_rng(42, 0), 1000) != draws(replicate_rng(43, 0), 1000));
    CHECK(draws(derived_rng(42, 0, 1), 100) != draws(replicate_rng(42, 0), 100));
}

TEST_CASE("uniform draws stay in range and are roughly uniform") {
    RngStream rng = replicate_rng(7, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const std::size_t k = rng.uniform_index(7);
        REQUIRE(k < 7);
        ++counts[k];
    }
    for (const int c : counts) CHECK(std::abs(c - 10000) < 500);

    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        const double z = rng.normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / 1e5) < 4.0 / std::sqrt(1e5));
    CHECK(std::abs(sum_sq / 1e5 - 1.0) < 0.02);
}

TEST_CASE("config round-trip preserves specs") {
    ResamplerSpec mbb;
    mbb.method = Method::MovingBlock;
    mbb.block_length = 3;
    mbb = normalize_spec(mbb);
    CHECK(spec_params_roundtrip(mbb) == mbb);

    ResamplerSpec inner;
    inner.method = Method::MovingBlock;
    inner.block_length = 20;
    ResamplerSpec composite;
    composite.method = Method::BlockResidual;
    composite.inner = std::make_shared<const ResamplerSpec>(inner);
    composite = normalize_spec(composite);
    const ResamplerSpec back = spec_params_roundtrip(composite);
    CHECK(back == composite);
    REQUIRE(back.inner);
    CHECK(back.inner->method == Method::MovingBlock);
    CHECK(back.inner->block_length == 20);

    ResamplerSpec full;
    full.method = Method::TaperedBlock;
    full.block_length = 7;
    full.window = WindowKind::Tukey;
    full.tukey_alpha = 0.25;
    full.geometric_p = 0.125;
    full.ar_order = 3;
    full.max_ar_order = 6;
    full.distribution = DistributionKind::Empirical;
    full.statistic = PreservedStatistic::MeanAndStd;
    full.n_states = 4;
    full = normalize_spec(full);
    CHECK(spec_params_roundtrip(full) == full);
}

TEST_CASE("every method round-trips with defaults") {
    for (const Method m : kAllMethods) {
        const ResamplerSpec spec = default_spec(m);
        CHECK_MESSAGE(spec_params_roundtrip(spec) == spec, to_string(m));
    }
}

TEST_CASE("malformed config text is rejected") {
    const auto code_of = [](const std::string& text) {
        try {
            (void)parse_config(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::FitFailure;
    };
    CHECK(code_of("method = \"MovingBlock\"\nblock_length = 0\n") == ErrorCode::MalformedConfig);
    CHECK(code_of("method = \"NoSuchMethod\"\n") == ErrorCode::MalformedConfig);
    CHECK(code_of("colour = 3\n") == ErrorCode::MalformedConfig);
    CHECK(code_of("block_length = three\n") == ErrorCode::MalformedConfig);
    CHECK(code_of("geometric_p = 1.5\n") == ErrorCode::MalformedConfig);
    CHECK(code_of("method = \"BlockResidual\"\n[inner]\nmethod = \"WholeMarkov\"\n") ==
          ErrorCode::MalformedConfig);
    CHECK(code_of("[outer]\nmethod = \"MovingBlock\"\n") == ErrorCode::MalformedConfig);
}

TEST_CASE("config parsing tolerates comments and case") {
    const ResamplerSpec spec =
        parse_config("# a comment\nmethod = \"circularblock\"  # trailing\n\nblock_length = 4\n");
    CHECK(spec.method == Method::CircularBlock);
    CHECK(spec.block_length == 4);
}

TEST_CASE("composite specs get a default inner resampler") {
    ResamplerSpec spec;
    spec.method = Method::BlockSieve;
    spec.block_length = 6;
    const ResamplerSpec n = normalize_spec(spec);
    REQUIRE(n.inner);
    CHECK(n.inner->method == Method::MovingBlock);
    CHECK(n.inner->block_length == 6);

    ResamplerSpec bad;
    bad.method = Method::MovingBlock;
    bad.inner = n.inner;
    CHECK_THROWS_AS((void)normalize_spec(bad), Error);
}

namespace {

// Wraps a real resampler and drops the last row of every replicate.
class ShortByOne final : public Bootstrapper {
public:
    explicit ShortByOne(ResamplerSpec spec) : inner_(std::move(spec)) {}
    const ResamplerSpec& spec() const override { return inner_.spec(); }
    std::vector<BootstrapReplicate> bootstrap(const TimeSeries& s,
                                              const RunConfig& c) const override {
        auto reps = inner_.bootstrap(s, c);
        for (auto& r : reps) {
            const std::size_t rows = r.values.rows() - 1;
            Matrix trimmed(rows, r.values.cols());
            for (std::size_t t = 0; t < rows; ++t)
                for (std::size_t k = 0; k < r.values.cols(); ++k) trimmed(t, k) = r.values(t, k);
            r.values = trimmed;
            if (r.indices) r.indices->pop_back();
        }
        return reps;
    }

private:
    Resampler inner_;
};

const CheckResult& find_check(const ComplianceReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST_CASE("compliance suite passes for a moving block spec") {
    ResamplerSpec spec;
    spec.block_length = 5;
    const ComplianceReport report = check_resampler(spec);
    CHECK(report.passed());
    CHECK(report.checks.size() == 5);
    CHECK(report.n_bootstraps == 5);
}

TEST_CASE("compliance suite flags a short replicate") {
    ResamplerSpec spec;
    spec.block_length = 5;
    const ShortByOne broken(normalize_spec(spec));
    const ComplianceReport report = check_resampler(broken);
    CHECK_FALSE(report.passed());
    CHECK(find_check(report, "length").outcome == CheckOutcome::Fail);
    CHECK(find_check(report, "determinism").outcome == CheckOutcome::Pass);
}

TEST_CASE("compliance suite passes for auto-order sieve") {
    const ComplianceReport report = check_resampler(default_spec(Method::WholeSieve));
    CHECK(report.passed());
    CHECK(find_check(report, "indices").outcome != CheckOutcome::Fail);
}
