#include "opord/suite.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>

#include "opord/douglas.hpp"
#include "opord/errors.hpp"
#include "opord/generate.hpp"
#include "opord/order.hpp"
#include "opord/rng.hpp"

namespace opord {
namespace {

// Contract bounds for equality trials, shared with the acceptance gate:
// contraction norms may exceed 1 only by kNormSlack, equality and factor
// residuals must stay below kEqualityResidualTol.
constexpr double kNormSlack = 1e-10;
constexpr double kEqualityResidualTol = 1e-8;

ClassicTheorem theorem_for(Family family) {
    switch (family) {
        case Family::furuta_a:
        case Family::furuta_b:
            return ClassicTheorem::furuta;
        case Family::grand_furuta:
            return ClassicTheorem::grand_furuta;
        default:
            return ClassicTheorem::extended_grand_furuta;
    }
}

double signed_margin(const InequalityResult& res) {
    return res.direction == Direction::lhs_geq_rhs ? res.verdict.min_eig_diff
                                                   : -res.verdict.max_eig_diff;
}

void push_verdict(TrialRecord& rec, const std::string& family, int k, bool holds,
                  double margin) {
    if (rec.verdicts.empty()) {
        rec.worst_residual = margin;
        rec.best_residual = margin;
    } else {
        rec.worst_residual = std::min(rec.worst_residual, margin);
        rec.best_residual = std::max(rec.best_residual, margin);
    }
    rec.verdicts.push_back({family, k, holds, margin});
}

void run_ordered_trial(const TrialConfig& config, Rng& trial_rng, int dim, int len,
                       TrialRecord& rec) {
    const OperatorChain chain =
        gen_ordered_chain(trial_rng.fork_seed(), dim, len, config.condition_cap);
    rec.chain_hash = chain_fingerprint(chain);
    const int ext_stages = trial_rng.uniform_int(1, 3);
    Json draws = Json::array();
    for (int draw = 0; draw < config.param_draws; ++draw) {
        for (Family family : families_for_length(len)) {
            InequalitySpec spec;
            spec.family = family;
            Json echo{{"family", family_name(family)}};
            switch (family) {
                case Family::furuta_a:
                case Family::furuta_b:
                case Family::grand_furuta:
                case Family::extended_grand_furuta: {
                    const ClassicParams cp = gen_classic_params(
                        trial_rng.fork_seed(), theorem_for(family));
                    spec.classic = cp;
                    echo["classic"] = classic_params_to_json(cp);
                    break;
                }
                case Family::furuta_extension: {
                    const FurutaParams fp =
                        gen_equal_weight_params(trial_rng.fork_seed(), ext_stages);
                    spec.furuta = fp;
                    echo["furuta"] = furuta_params_to_json(fp);
                    break;
                }
                default: {
                    const FurutaParams fp =
                        gen_params(trial_rng.fork_seed(), half_stages(len));
                    spec.furuta = fp;
                    echo["furuta"] = furuta_params_to_json(fp);
                    break;
                }
            }
            const bool item_family = spec.family == Family::odd_chain_item ||
                                     spec.family == Family::even_chain_item;
            const int items = item_family ? item_count(len) : 1;
            for (int k = 1; k <= items; ++k) {
                spec.k = item_family ? k : 0;
                const InequalityResult res =
                    check_inequality(spec, chain, config.tolerance);
                push_verdict(rec, family_name(family), spec.k, res.holds,
                             signed_margin(res));
                if (!res.holds) rec.expected_met = false;
            }
            draws.push_back(std::move(echo));
        }
    }
    rec.params = Json{{"draws", std::move(draws)}};
}

void run_broken_trial(const TrialConfig& config, Rng& trial_rng, int dim, int len,
                      int link, TrialRecord& rec) {
    const OperatorChain chain = gen_broken_chain(
        trial_rng.fork_seed(), dim, len, link, config.violation_depth);
    rec.chain_hash = chain_fingerprint(chain);
    rec.params = Json{{"broken_link", link},
                      {"violation_depth", config.violation_depth}};
    const WitnessReport report = reverse_witness(chain, half_stages(len),
                                                 default_schedule(), config.tolerance);
    rec.witness_found = report.found;
    rec.witness_p2 = report.p2_used;
    if (report.found) {
        rec.witness_item = report.spec->k;
        push_verdict(rec, family_name(report.spec->family), report.spec->k, false,
                     report.residual);
    }
    rec.expected_met = report.found;
}

void run_equality_trial(const TrialConfig& config, Rng& trial_rng, int dim, int len,
                        TrialRecord& rec) {
    const auto [fp, m] = gen_equality_instance(trial_rng.fork_seed(),
                                               half_stages(len));
    const OperatorChain chain =
        gen_ordered_chain(trial_rng.fork_seed(), dim, len, config.condition_cap);
    rec.chain_hash = chain_fingerprint(chain);
    rec.m = m;
    rec.params = Json{{"furuta", furuta_params_to_json(fp)}, {"m", m}};
    const Family family =
        len % 2 == 1 ? Family::odd_chain_item : Family::even_chain_item;
    for (int item = 1; item <= item_count(len); ++item) {
        const ContractionWitness w = construct_contraction(chain, fp, item, m);
        const double residual =
            std::max({w.equality_residuals.first, w.equality_residuals.second,
                      w.factor_residual});
        const bool ok = w.norm <= 1.0 + kNormSlack && residual <= kEqualityResidualTol;
        push_verdict(rec, family_name(family), item, ok, 1.0 - w.norm);
        rec.max_norm = std::max(rec.max_norm, w.norm);
        rec.max_equality_residual = std::max(rec.max_equality_residual, residual);
        if (!ok) rec.expected_met = false;
    }
}

std::vector<int> int_list(const Json& j, const char* key, std::vector<int> fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_array()) throw IoError(std::string("config \"") + key + "\" must be an array");
    std::vector<int> out;
    for (const Json& v : *it) {
        if (!v.is_number_integer())
            throw IoError(std::string("config \"") + key + "\" must hold integers");
        out.push_back(v.get<int>());
    }
    if (out.empty())
        throw IoError(std::string("config \"") + key + "\" must not be empty");
    return out;
}

int int_field(const Json& j, const char* key, int fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer())
        throw IoError(std::string("config \"") + key + "\" must be an integer");
    return it->get<int>();
}

double double_field(const Json& j, const char* key, double fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number())
        throw IoError(std::string("config \"") + key + "\" must be a number");
    return it->get<double>();
}

Json verdicts_to_json(const std::vector<VerdictRecord>& verdicts) {
    Json list = Json::array();
    for (const VerdictRecord& v : verdicts)
        list.push_back(Json{{"family", v.family},
                            {"k", v.k},
                            {"holds", v.holds},
                            {"min_eig_diff", v.min_eig_diff}});
    return list;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

std::vector<Family> families_for_length(int length) {
    if (length < 2) throw InvalidParams("a chain has at least 2 operators");
    if (length == 2)
        return {Family::furuta_a, Family::furuta_b, Family::grand_furuta,
                Family::furuta_extension, Family::even_chain_item};
    if (length == 3)
        return {Family::extended_grand_furuta, Family::further_extension,
                Family::odd_chain_item};
    if (length % 2 == 1) return {Family::further_extension, Family::odd_chain_item};
    return {Family::even_chain_item};
}

Json trial_config_to_json(const TrialConfig& config) {
    return Json{{"seed", config.seed},
                {"dims", config.dims},
                {"chain_lengths", config.chain_lengths},
                {"ordered_trials", config.ordered_trials},
                {"broken_trials", config.broken_trials},
                {"equality_trials", config.equality_trials},
                {"param_draws", config.param_draws},
                {"tolerance", config.tolerance},
                {"condition_cap", config.condition_cap},
                {"violation_depth", config.violation_depth},
                {"counterexample_preset", config.counterexample_preset}};
}

TrialConfig trial_config_from_json(const Json& j) {
    TrialConfig config;
    if (const auto it = j.find("seed"); it != j.end()) {
        if (!it->is_number_unsigned() && !it->is_number_integer())
            throw IoError("config \"seed\" must be an integer");
        config.seed = it->get<std::uint64_t>();
    }
    config.dims = int_list(j, "dims", config.dims);
    config.chain_lengths = int_list(j, "chain_lengths", config.chain_lengths);
    config.ordered_trials = int_field(j, "ordered_trials", config.ordered_trials);
    config.broken_trials = int_field(j, "broken_trials", config.broken_trials);
    config.equality_trials = int_field(j, "equality_trials", config.equality_trials);
    config.param_draws = int_field(j, "param_draws", config.param_draws);
    config.tolerance = double_field(j, "tolerance", config.tolerance);
    config.condition_cap = double_field(j, "condition_cap", config.condition_cap);
    config.violation_depth =
        double_field(j, "violation_depth", config.violation_depth);
    if (const auto it = j.find("counterexample_preset"); it != j.end()) {
        if (!it->is_boolean())
            throw IoError("config \"counterexample_preset\" must be a boolean");
        config.counterexample_preset = it->get<bool>();
    }
    if (config.ordered_trials < 0 || config.broken_trials < 0 ||
        config.equality_trials < 0 || config.param_draws < 0)
        throw IoError("config trial counts must be nonnegative");
    for (int d : config.dims)
        if (d < 1) throw IoError("config dims must be positive");
    for (int len : config.chain_lengths)
        if (len < 2) throw IoError("config chain lengths must be at least 2");
    return config;
}

Json run_report_to_json(const RunReport& report) {
    Json records = Json::array();
    for (const TrialRecord& rec : report.records) {
        Json r{{"index", rec.index},
               {"kind", rec.kind},
               {"chain_hash", rec.chain_hash},
               {"params", rec.params},
               {"verdicts", verdicts_to_json(rec.verdicts)},
               {"worst_residual", rec.worst_residual},
               {"best_residual", rec.best_residual},
               {"expected_met", rec.expected_met}};
        if (rec.kind == "broken") {
            r["witness_found"] = rec.witness_found;
            r["witness_p2"] = rec.witness_p2;
            r["witness_item"] = rec.witness_item;
        } else if (rec.kind == "equality") {
            r["m"] = rec.m;
            r["max_norm"] = rec.max_norm;
            r["max_equality_residual"] = rec.max_equality_residual;
        }
        records.push_back(std::move(r));
    }
    const RunSummary& s = report.summary;
    return Json{{"schema_version", report.schema_version},
                {"config", trial_config_to_json(report.config)},
                {"records", std::move(records)},
                {"summary",
                 Json{{"trials", s.trials},
                      {"ordered_pass", s.ordered_pass},
                      {"ordered_fail", s.ordered_fail},
                      {"witness_found", s.witness_found},
                      {"witness_missed", s.witness_missed},
                      {"equality_pass", s.equality_pass},
                      {"equality_fail", s.equality_fail},
                      {"counterexample_pass", s.counterexample_pass},
                      {"counterexample_fail", s.counterexample_fail},
                      {"all_expected_met", s.all_expected_met()}}},
                {"timestamp", report.timestamp},
                {"hash", report.hash}};
}

std::uint64_t report_hash(const Json& report_json) {
    Json canonical = report_json;
    canonical.erase("timestamp");
    canonical.erase("hash");
    return fnv1a_hash(canonical.dump());
}

RunReport run_suite(const TrialConfig& config) {
    RunReport report;
    report.config = config;
    Rng master(config.seed);
    const int ndims = static_cast<int>(config.dims.size());
    const int nlens = static_cast<int>(config.chain_lengths.size());
    int index = 0;

    auto finish = [&report](TrialRecord rec, int& pass, int& fail) {
        if (rec.expected_met)
            ++pass;
        else
            ++fail;
        report.records.push_back(std::move(rec));
    };

    for (int i = 0; i < config.ordered_trials; ++i) {
        Rng trial_rng(master.fork_seed());
        TrialRecord rec;
        rec.index = index++;
        rec.kind = "ordered";
        const int dim = config.dims[static_cast<std::size_t>(i % ndims)];
        const int len =
            config.chain_lengths[static_cast<std::size_t>((i / ndims) % nlens)];
        try {
            run_ordered_trial(config, trial_rng, dim, len, rec);
        } catch (const OpordError& err) {
            rec.expected_met = false;
            rec.params["error"] = err.what();
        }
        finish(std::move(rec), report.summary.ordered_pass,
               report.summary.ordered_fail);
    }

    for (int i = 0; i < config.broken_trials; ++i) {
        Rng trial_rng(master.fork_seed());
        TrialRecord rec;
        rec.index = index++;
        rec.kind = "broken";
        const int dim = config.dims[static_cast<std::size_t>(i % ndims)];
        const int len =
            config.chain_lengths[static_cast<std::size_t>((i / ndims) % nlens)];
        const int link = 1 + i % (len - 1);
        try {
            run_broken_trial(config, trial_rng, dim, len, link, rec);
        } catch (const OpordError& err) {
            rec.expected_met = false;
            rec.params["error"] = err.what();
        }
        if (rec.witness_found)
            ++report.summary.witness_found;
        else
            ++report.summary.witness_missed;
        report.records.push_back(std::move(rec));
    }

    for (int i = 0; i < config.equality_trials; ++i) {
        Rng trial_rng(master.fork_seed());
        TrialRecord rec;
        rec.index = index++;
        rec.kind = "equality";
        const int dim = config.dims[static_cast<std::size_t>(i % ndims)];
        const int len =
            config.chain_lengths[static_cast<std::size_t>((i / ndims) % nlens)];
        try {
            run_equality_trial(config, trial_rng, dim, len, rec);
        } catch (const OpordError& err) {
            rec.expected_met = false;
            rec.params["error"] = err.what();
        }
        finish(std::move(rec), report.summary.equality_pass,
               report.summary.equality_fail);
    }

    if (config.counterexample_preset) {
        const FurutaParams fp = counterexample_default_params();
        for (double u : {1.5, 2.0, 4.0}) {
            for (double eps : {0.1, 1.0}) {
                TrialRecord rec;
                rec.index = index++;
                rec.kind = "counterexample";
                rec.params = Json{{"u", u},
                                  {"eps", eps},
                                  {"furuta", furuta_params_to_json(fp)}};
                const CounterexampleReport cell =
                    verify_counterexample(u, eps, fp, config.tolerance);
                rec.chain_hash = chain_fingerprint(counterexample_chain(u, eps));
                push_verdict(rec, "first-item", 1, cell.first_holds,
                             signed_margin(cell.first_item));
                push_verdict(rec, "last-item", 4, cell.last_holds,
                             signed_margin(cell.last_item));
                push_verdict(rec, "middle-link-order", 3, !cell.order_fails,
                             cell.order.links[2].min_eig_diff);
                rec.expected_met = cell.expectations_met;
                finish(std::move(rec), report.summary.counterexample_pass,
                       report.summary.counterexample_fail);
            }
        }
    }

    report.summary.trials = static_cast<int>(report.records.size());
    report.timestamp = utc_timestamp();
    report.hash = report_hash(run_report_to_json(report));
    return report;
}

}  // namespace opord
