#pragma once

#include "xhermite/partition.hpp"
#include "xhermite/pipeline.hpp"
#include "xhermite/zeros.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace xh {

// One batch description: a partition, the on-axis zero counts to sweep, and
// which analysis stages to run. Scenario names:
//   construct zeros hessian gersgorin dnu optimality semicircle sweep
struct ScenarioConfig {
    Partition lambda;
    std::vector<int> n_values;
    unsigned precision_bits = 192;
    std::vector<std::string> scenarios; // canonical dependency order, deduped
    std::uint64_t seed = 7;
    std::string output_dir = "out";
    std::map<std::string, double> tolerances; // per-claim overrides

    bool wants(const std::string& name) const;
    double tol(const std::string& key, double fallback) const;
};

// Parse + validate (admissible n values, precision floor, known scenario
// names). Inadmissible n values are reported together with the excluded
// degrees of the partition.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig config_from_file(const std::string& path);

// Semicircle CDF G(t) = 1/2 + (t sqrt(1-t^2) + arcsin t)/pi, clamped
// outside [-1, 1].
double semicircle_cdf(double t);

// Kolmogorov-Smirnov distance between the empirical CDF of the regular
// zeros scaled by 1/sqrt(2(m+n)) and the semicircle CDF.
double semicircle_report(const ZeroSet& zs, int n, int m);

struct RunOutcome {
    nlohmann::ordered_json summary;
    int failed_cases = 0;  // per-n executions that threw (recorded, not fatal)
    int failed_claims = 0; // PASS/FAIL claims that came out FAIL
};

// Execute the requested scenarios for every n, one CSV + one JSON per
// scenario per n, cross-n fits under "sweep", and a summary.json with
// per-claim PASS/FAIL/REPORT verdicts. Deterministic for a fixed config.
RunOutcome run(const ScenarioConfig& config);

} // namespace xh
