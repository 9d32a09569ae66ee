#pragma once

// The acceptance suite: each criterion is an exact property check with a time limit.

#include <cstdint>
#include <string>
#include <vector>

namespace injhom::check {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;
    /// Stretch checks are reported but never gate the suite.
    bool gating = true;

    auto format() const -> std::string;
};

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    std::string asset_dir;
    /// Skips the stretch checks.
    bool quick = false;
};

constexpr int criterion_count = 11;

auto criterion_name(int number) -> std::string;

/// Runs one criterion, 1..criterion_count. A criterion also fails when it overruns its limit.
auto run_criterion(int number, const AcceptanceOptions & options) -> CriterionResult;

/// Petersen graph: Unsat for both edge-colouring reductions.
auto run_petersen_stretch(const AcceptanceOptions & options) -> CriterionResult;

/// Every criterion in order, then the stretch check unless quick. `report` sees each result
/// as soon as it is available.
template <typename Report>
auto run_acceptance(const AcceptanceOptions & options, Report && report) -> std::vector<CriterionResult>
{
    std::vector<CriterionResult> results;
    for (int k = 1; k <= criterion_count; ++k) {
        results.push_back(run_criterion(k, options));
        report(results.back());
    }
    if (! options.quick) {
        results.push_back(run_petersen_stretch(options));
        report(results.back());
    }
    return results;
}

auto all_gating_passed(const std::vector<CriterionResult> & results) -> bool;

}
