#pragma once

#include "tsboot/resampler.hpp"
#include "tsboot/spec.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tsboot {

enum class CheckOutcome { Pass, Fail, NotApplicable };

struct CheckResult {
    std::string name;
    CheckOutcome outcome = CheckOutcome::Fail;
    std::string detail;
};

struct ComplianceReport {
    std::string method;
    std::size_t n_bootstraps = 0;
    std::vector<CheckResult> checks;

    /// NotApplicable counts as passing.
    [[nodiscard]] bool passed() const noexcept;
};

/// Fixed 50 x 1 series the contract suite runs on.
[[nodiscard]] TimeSeries compliance_series();

/// Contract suite: output length, determinism under a fixed seed, replicate
/// count, index range (-1 is accepted as the "no single source" marker), and
/// parameter round-trip. Failures are report entries; nothing is thrown for a
/// misbehaving target.
[[nodiscard]] ComplianceReport check_resampler(const Bootstrapper& target,
                                               std::size_t n_bootstraps = 5);

/// Convenience overload building a Resampler; throws Error(InvalidSpec) if the
/// spec is rejected before any check runs.
[[nodiscard]] ComplianceReport check_resampler(const ResamplerSpec& spec,
                                               std::size_t n_bootstraps = 5);

[[nodiscard]] std::string_view to_string(CheckOutcome outcome) noexcept;

}  // namespace tsboot
