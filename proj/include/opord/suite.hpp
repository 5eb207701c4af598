#pragma once

// Batch verification driver.  A TrialConfig pins every free choice (seed,
// sizes, trial counts, tolerance), so two runs of the same config produce
// byte-identical reports except for the timestamp, which the report hash
// excludes.

#include <cstdint>
#include <string>
#include <vector>

#include "opord/chain.hpp"
#include "opord/json_io.hpp"

namespace opord {

struct TrialConfig {
    std::uint64_t seed = 42;
    std::vector<int> dims{2, 3};
    std::vector<int> chain_lengths{2, 3, 4, 5};
    int ordered_trials = 20;
    int broken_trials = 5;
    int equality_trials = 5;
    int param_draws = 3;
    double tolerance = -1.0;  // < 0 selects each check's own default
    double condition_cap = 50.0;
    double violation_depth = 0.05;
    bool counterexample_preset = true;
};

// One inequality verdict inside a trial.  min_eig_diff is the signed margin
// in the asserted direction (negative means violated); for equality trials
// it is 1 minus the contraction norm.
struct VerdictRecord {
    std::string family;
    int k = 0;
    bool holds = false;
    double min_eig_diff = 0.0;
};

struct TrialRecord {
    int index = 0;
    std::string kind;  // "ordered" | "broken" | "equality" | "counterexample"
    std::uint64_t chain_hash = 0;
    Json params = Json::object();
    std::vector<VerdictRecord> verdicts;
    double worst_residual = 0.0;
    double best_residual = 0.0;
    bool expected_met = true;

    // broken trials only
    bool witness_found = false;
    double witness_p2 = 0.0;
    int witness_item = 0;

    // equality trials only
    int m = 0;
    double max_norm = 0.0;
    double max_equality_residual = 0.0;
};

struct RunSummary {
    int trials = 0;
    int ordered_pass = 0;
    int ordered_fail = 0;
    int witness_found = 0;
    int witness_missed = 0;
    int equality_pass = 0;
    int equality_fail = 0;
    int counterexample_pass = 0;
    int counterexample_fail = 0;

    bool all_expected_met() const {
        return ordered_fail == 0 && witness_missed == 0 && equality_fail == 0 &&
               counterexample_fail == 0;
    }
};

struct RunReport {
    int schema_version = kSchemaVersion;
    TrialConfig config;
    std::vector<TrialRecord> records;
    RunSummary summary;
    std::string timestamp;   // ISO-8601 UTC, excluded from the hash
    std::uint64_t hash = 0;  // FNV-1a of the canonical dump minus volatile fields
};

// Families a chain of this length exercises in an ordered trial: the
// two-operator classics plus the single even item at length 2, the
// three-operator classics plus odd items at length 3, and the matching
// item family (plus the 2n+1-operator extension when odd) beyond that.
std::vector<Family> families_for_length(int length);

Json trial_config_to_json(const TrialConfig& config);
TrialConfig trial_config_from_json(const Json& j);
Json run_report_to_json(const RunReport& report);

// Canonical hash: drops "timestamp" and "hash", then FNV-1a over the dump.
std::uint64_t report_hash(const Json& report_json);

// Run the whole batch: forward verification on ordered chains, witness
// search on broken chains, contraction round-trips on integer-ratio draws,
// and the pinned six-cell counterexample grid.
RunReport run_suite(const TrialConfig& config);

}  // namespace opord
