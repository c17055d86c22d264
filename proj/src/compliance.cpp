#include "tsboot/compliance.hpp"

#include "tsboot/config.hpp"
#include "tsboot/error.hpp"

#include <cmath>
#include <exception>
#include <string>

namespace tsboot {

namespace {

constexpr std::uint64_t kCheckSeed = 20240229;

CheckResult make(std::string name, bool ok, std::string detail = {}) {
    return {std::move(name), ok ? CheckOutcome::Pass : CheckOutcome::Fail, std::move(detail)};
}

}  // namespace

bool ComplianceReport::passed() const noexcept {
    for (const auto& c : checks) {
        if (c.outcome == CheckOutcome::Fail) return false;
    }
    return true;
}

std::string_view to_string(CheckOutcome outcome) noexcept {
    switch (outcome) {
        case CheckOutcome::Pass: return "pass";
        case CheckOutcome::Fail: return "fail";
        case CheckOutcome::NotApplicable: return "n/a";
    }
    return "unknown";
}

TimeSeries compliance_series() {
    // Deterministic AR(1)-like signal with a slow cycle; no RNG involved.
    std::vector<double> x(50);
    double state = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const double td = static_cast<double>(t);
        const double shock = std::sin(1.7 * td + 0.3) + 0.5 * std::cos(3.1 * td);
        state = 0.6 * state + shock;
        x[t] = 10.0 + state + 0.8 * std::sin(td / 4.0);
    }
    return TimeSeries::from_vector(x);
}

ComplianceReport check_resampler(const Bootstrapper& target, std::size_t n_bootstraps) {
    ComplianceReport report;
    report.method = std::string(to_string(target.spec().method));
    report.n_bootstraps = n_bootstraps;
    const TimeSeries series = compliance_series();
    const std::size_t n = series.length();

    RunConfig config;
    config.n_bootstraps = n_bootstraps;
    config.seed = kCheckSeed;
    config.return_indices = true;

    std::vector<BootstrapReplicate> first;
    std::vector<BootstrapReplicate> second;
    try {
        first = target.bootstrap(series, config);
        second = target.bootstrap(series, config);
    } catch (const std::exception& e) {
        const std::string why = std::string("bootstrap threw: ") + e.what();
        for (const char* name : {"length", "determinism", "count", "indices"}) {
            report.checks.push_back(make(name, false, why));
        }
    }

    if (report.checks.empty()) {
        bool lengths_ok = true;
        std::string detail;
        for (const auto& rep : first) {
            if (rep.values.rows() != n || rep.values.cols() != series.channels()) {
                lengths_ok = false;
                detail = "replicate " + std::to_string(rep.ordinal) + " has " +
                         std::to_string(rep.values.rows()) + " rows, expected " + std::to_string(n);
                break;
            }
        }
        report.checks.push_back(make("length", lengths_ok, detail));

        bool same = first.size() == second.size();
        for (std::size_t k = 0; same && k < first.size(); ++k) {
            same = first[k].values == second[k].values && first[k].indices == second[k].indices;
        }
        report.checks.push_back(make("determinism", same, same ? "" : "repeated run differs"));

        bool count_ok = first.size() == n_bootstraps;
        for (std::size_t k = 0; count_ok && k < first.size(); ++k) count_ok = first[k].ordinal == k;
        report.checks.push_back(make("count", count_ok,
                                     "yielded " + std::to_string(first.size()) + " of " +
                                         std::to_string(n_bootstraps)));

        bool any_indices = false;
        bool indices_ok = true;
        std::string index_detail;
        for (const auto& rep : first) {
            if (!rep.indices) continue;
            any_indices = true;
            if (rep.indices->size() != rep.values.rows()) {
                indices_ok = false;
                index_detail = "index vector length mismatch";
                break;
            }
            for (const std::int64_t idx : *rep.indices) {
                if (idx != kNoSourceIndex && (idx < 0 || idx >= static_cast<std::int64_t>(n))) {
                    indices_ok = false;
                    index_detail = "index " + std::to_string(idx) + " out of range";
                    break;
                }
            }
        }
        if (!any_indices && n_bootstraps > 0) {
            report.checks.push_back({"indices", CheckOutcome::NotApplicable, "indices not emitted"});
        } else {
            report.checks.push_back(make("indices", indices_ok, index_detail));
        }
    }

    try {
        const bool same = spec_params_roundtrip(target.spec()) == target.spec();
        report.checks.push_back(make("params_roundtrip", same, same ? "" : "spec changed"));
    } catch (const std::exception& e) {
        report.checks.push_back(make("params_roundtrip", false, e.what()));
    }
    return report;
}

ComplianceReport check_resampler(const ResamplerSpec& spec, std::size_t n_bootstraps) {
    const Resampler resampler(spec);
    return check_resampler(resampler, n_bootstraps);
}

}  // namespace tsboot
