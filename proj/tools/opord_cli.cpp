// Command-line front end.  Exit codes are part of the contract:
//   0  the requested check met its expectations
//   1  a mathematical violation where none was expected (or a missing
//      witness where one was expected)
//   2  usage, file, or input-validation errors
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opord/douglas.hpp"
#include "opord/errors.hpp"
#include "opord/exponents.hpp"
#include "opord/generate.hpp"
#include "opord/json_io.hpp"
#include "opord/order.hpp"
#include "opord/suite.hpp"

namespace {

using namespace opord;

struct CommonArgs {
    std::string chain_path;
    std::string params_path;
    std::string json_out;
    double tol = -1.0;
};

void emit(const CommonArgs& args, const Json& payload) {
    if (!args.json_out.empty()) save_json_file(args.json_out, payload);
}

OperatorChain load_chain(const CommonArgs& args) {
    return chain_from_json(load_json_file(args.chain_path));
}

Json verdict_to_json(const ComparisonVerdict& v) {
    return Json{{"relation", relation_name(v.relation)},
                {"min_eig_diff", v.min_eig_diff},
                {"max_eig_diff", v.max_eig_diff},
                {"tolerance_used", v.tolerance_used}};
}

int run_check_order(const CommonArgs& args) {
    const OperatorChain chain = load_chain(args);
    const OrderReport report = check_order(chain, args.tol);
    Json links = Json::array();
    for (std::size_t i = 0; i < report.links.size(); ++i) {
        const ComparisonVerdict& v = report.links[i];
        std::printf("link %zu: A_%zu vs A_%zu  %s  (min_eig_diff=%.3e)\n", i + 1,
                    i + 2, i + 1, relation_name(v.relation), v.min_eig_diff);
        links.push_back(verdict_to_json(v));
    }
    if (report.is_ordered)
        std::printf("chain of %d operators is ordered\n", chain.length());
    else {
        std::printf("chain is NOT ordered; broken links:");
        for (int link : report.broken()) std::printf(" %d", link);
        std::printf("\n");
    }
    emit(args, Json{{"schema_version", kSchemaVersion},
                    {"command", "check-order"},
                    {"is_ordered", report.is_ordered},
                    {"links", std::move(links)},
                    {"broken", report.broken()}});
    return report.is_ordered ? 0 : 1;
}

int run_verify(const CommonArgs& args, const std::string& family_arg) {
    std::string name = family_arg;
    std::optional<int> forced_n;
    if (name == "five-chain-item") {
        // Convenience alias: the five-operator characterization is the odd
        // item family at two stages.
        name = "odd-chain-item";
        forced_n = 2;
    }
    const std::optional<Family> family = family_from_name(name);
    if (!family) throw InvalidParams("unknown family \"" + family_arg + "\"");

    const OperatorChain chain = load_chain(args);
    const OrderReport order = check_order(chain, args.tol);
    if (!order.is_ordered)
        throw PreorderViolation(
            "the chain is not ordered; these families only claim anything on "
            "ordered chains (run check-order to locate the break)");

    const Json params_json = load_json_file(args.params_path);
    InequalitySpec spec;
    spec.family = *family;
    const bool classic = *family == Family::furuta_a || *family == Family::furuta_b ||
                         *family == Family::grand_furuta ||
                         *family == Family::extended_grand_furuta;
    if (classic)
        spec.classic = classic_params_from_json(params_json);
    else
        spec.furuta = furuta_params_from_json(params_json);
    if (forced_n && spec.furuta && spec.furuta->n != *forced_n)
        throw InvalidParams("five-chain-item expects a two-stage parameter bundle");

    const bool item_family = *family == Family::odd_chain_item ||
                             *family == Family::even_chain_item;
    const int items = item_family ? item_count(chain.length()) : 1;
    bool all_hold = true;
    Json rows = Json::array();
    for (int k = 1; k <= items; ++k) {
        spec.k = item_family ? k : 0;
        const InequalityResult res = check_inequality(spec, chain, args.tol);
        all_hold = all_hold && res.holds;
        const char* dir = res.direction == Direction::lhs_geq_rhs ? ">=" : "<=";
        if (item_family)
            std::printf("item %d (%s): %s  [lhs %s rhs, min=%.3e max=%.3e]\n", k,
                        family_name(*family), res.holds ? "holds" : "VIOLATED", dir,
                        res.verdict.min_eig_diff, res.verdict.max_eig_diff);
        else
            std::printf("%s: %s  [lhs %s rhs, min=%.3e max=%.3e]\n",
                        family_name(*family), res.holds ? "holds" : "VIOLATED", dir,
                        res.verdict.min_eig_diff, res.verdict.max_eig_diff);
        rows.push_back(Json{{"k", spec.k},
                            {"holds", res.holds},
                            {"direction", dir},
                            {"verdict", verdict_to_json(res.verdict)}});
    }
    emit(args, Json{{"schema_version", kSchemaVersion},
                    {"command", "verify"},
                    {"family", family_name(*family)},
                    {"items", std::move(rows)},
                    {"all_hold", all_hold}});
    return all_hold ? 0 : 1;
}

int run_witness(const CommonArgs& args) {
    const OperatorChain chain = load_chain(args);
    if (check_order(chain, args.tol).is_ordered)
        throw InvalidParams(
            "the chain is ordered, so no finite witness exists; this command "
            "expects a chain that violates the order somewhere");
    const WitnessReport report =
        reverse_witness(chain, half_stages(chain.length()), default_schedule(),
                        args.tol);
    Json bounds = Json::array();
    for (const WitnessBound& b : report.bounds)
        bounds.push_back(Json{{"item", b.item},
                              {"link", b.link},
                              {"factor", b.factor},
                              {"threshold", b.threshold},
                              {"bracket_extreme", b.bracket_extreme}});
    Json payload{{"schema_version", kSchemaVersion},
                 {"command", "witness"},
                 {"found", report.found},
                 {"p2_used", report.p2_used},
                 {"bounds", std::move(bounds)}};
    if (report.found) {
        std::printf(
            "violation witnessed: item %d of %s fails at p2=%g "
            "(residual=%.3e)\n",
            report.spec->k, family_name(report.spec->family), report.p2_used,
            report.residual);
        payload["family"] = family_name(report.spec->family);
        payload["k"] = report.spec->k;
        payload["residual"] = report.residual;
        payload["params"] = furuta_params_to_json(*report.spec->furuta);
    } else {
        std::printf(
            "no witness found up to p2=%g; the order break is too shallow for "
            "this schedule\n",
            report.p2_used);
    }
    emit(args, payload);
    return report.found ? 0 : 1;
}

int run_remark22(const CommonArgs& args) {
    const FurutaParams fp = args.params_path.empty()
                                ? counterexample_default_params()
                                : furuta_params_from_json(load_json_file(args.params_path));
    bool all_met = true;
    Json cells = Json::array();
    for (double u : {1.5, 2.0, 4.0}) {
        for (double eps : {0.1, 1.0}) {
            const CounterexampleReport cell = verify_counterexample(u, eps, fp, args.tol);
            all_met = all_met && cell.expectations_met;
            std::printf(
                "u=%-4g eps=%-4g  first item %s, last item %s, middle link %s  %s\n",
                u, eps, cell.first_holds ? "holds" : "fails",
                cell.last_holds ? "holds" : "fails",
                cell.order_fails ? "broken" : "ordered",
                cell.expectations_met ? "[expected]" : "[UNEXPECTED]");
            cells.push_back(Json{{"u", u},
                                 {"eps", eps},
                                 {"first_holds", cell.first_holds},
                                 {"last_holds", cell.last_holds},
                                 {"order_fails", cell.order_fails},
                                 {"expectations_met", cell.expectations_met}});
        }
    }
    std::printf("%s\n", all_met
                            ? "all 6 cells: boundary items hold while the middle "
                              "link is broken"
                            : "some cells did not meet expectations");
    emit(args, Json{{"schema_version", kSchemaVersion},
                    {"command", "remark22"},
                    {"params", furuta_params_to_json(fp)},
                    {"cells", std::move(cells)},
                    {"all_met", all_met}});
    return all_met ? 0 : 1;
}

int run_douglas(const CommonArgs& args) {
    const OperatorChain chain = load_chain(args);
    const FurutaParams fp = furuta_params_from_json(load_json_file(args.params_path));
    const std::optional<int> m = compute_m(fp);
    if (!m)
        throw InvalidParams(
            "the exponent ratio (psi - t_n + r)/(r - t_n) is not an integer; "
            "no equality family exists for these parameters");
    std::printf("integer exponent ratio m=%d\n", *m);
    bool all_within = true;
    Json rows = Json::array();
    for (int k = 1; k <= item_count(chain.length()); ++k) {
        const ContractionWitness w = construct_contraction(chain, fp, k, *m);
        const bool ok = w.norm <= 1.0 + 1e-10 &&
                        w.equality_residuals.first <= 1e-8 &&
                        w.equality_residuals.second <= 1e-8 &&
                        w.factor_residual <= 1e-8;
        all_within = all_within && ok;
        std::printf(
            "item %d: |S|=%.12f  equality residuals %.3e / %.3e  factor %.3e  %s\n",
            k, w.norm, w.equality_residuals.first, w.equality_residuals.second,
            w.factor_residual, ok ? "ok" : "OUT OF BOUNDS");
        rows.push_back(Json{{"k", k},
                            {"norm", w.norm},
                            {"equality_residuals",
                             {w.equality_residuals.first, w.equality_residuals.second}},
                            {"factor_residual", w.factor_residual},
                            {"contraction", matrix_to_json(w.s.mat())},
                            {"within_bounds", ok}});
    }
    emit(args, Json{{"schema_version", kSchemaVersion},
                    {"command", "douglas"},
                    {"m", *m},
                    {"params", furuta_params_to_json(fp)},
                    {"items", std::move(rows)},
                    {"all_within_bounds", all_within}});
    return all_within ? 0 : 1;
}

int run_suite_cmd(const CommonArgs& args, std::optional<std::uint64_t> seed) {
    TrialConfig config;
    if (!args.params_path.empty())
        config = trial_config_from_json(load_json_file(args.params_path));
    if (seed) config.seed = *seed;
    if (args.tol >= 0.0) config.tolerance = args.tol;
    const RunReport report = run_suite(config);
    const RunSummary& s = report.summary;
    std::printf("suite: %d trials (seed %llu)\n", s.trials,
                static_cast<unsigned long long>(report.config.seed));
    std::printf("  ordered:        %d pass, %d fail\n", s.ordered_pass, s.ordered_fail);
    std::printf("  witness search: %d found, %d missed\n", s.witness_found,
                s.witness_missed);
    std::printf("  equalities:     %d pass, %d fail\n", s.equality_pass, s.equality_fail);
    std::printf("  counterexample: %d pass, %d fail\n", s.counterexample_pass,
                s.counterexample_fail);
    std::printf("  report hash: %016llx\n",
                static_cast<unsigned long long>(report.hash));
    emit(args, run_report_to_json(report));
    return s.all_expected_met() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "numerical verification of operator-order inequality families on "
        "positive definite matrix chains"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string family_arg;
    std::uint64_t seed_arg = 0;

    auto add_common = [&args](CLI::App* cmd, bool needs_chain, bool needs_params) {
        auto* chain = cmd->add_option("--chain", args.chain_path,
                                      "JSON file holding the operator chain");
        if (needs_chain) chain->required();
        auto* params = cmd->add_option("--params", args.params_path,
                                       "JSON file holding the parameter bundle");
        if (needs_params) params->required();
        cmd->add_option("--tol", args.tol,
                        "comparison tolerance (default: scale-relative 1e-8)");
        cmd->add_option("--json-out", args.json_out,
                        "write a machine-readable report to this file");
    };

    auto* check = app.add_subcommand("check-order",
                                     "compare every adjacent pair of the chain");
    add_common(check, true, false);

    auto* verify = app.add_subcommand("verify", "evaluate one inequality family");
    verify
        ->add_option("family", family_arg,
                     "furuta-a|furuta-b|grand-furuta|extended-grand-furuta|"
                     "furuta-extension|further-extension|odd-chain-item|"
                     "even-chain-item|five-chain-item")
        ->required();
    add_common(verify, true, true);

    auto* witness = app.add_subcommand(
        "witness", "search for a finite exponent exposing an order violation");
    add_common(witness, true, false);

    auto* remark = app.add_subcommand(
        "remark22",
        "six-cell counterexample grid: boundary items hold, order still fails");
    add_common(remark, false, false);

    auto* douglas = app.add_subcommand(
        "douglas", "build the contraction witnesses behind the equality family");
    add_common(douglas, true, true);

    auto* suite = app.add_subcommand("suite", "run a seeded batch of all checks");
    add_common(suite, false, false);
    auto* seed_opt =
        suite->add_option("--seed", seed_arg, "override the config seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return run_check_order(args);
        if (verify->parsed()) return run_verify(args, family_arg);
        if (witness->parsed()) return run_witness(args);
        if (remark->parsed()) return run_remark22(args);
        if (douglas->parsed()) return run_douglas(args);
        if (suite->parsed())
            return run_suite_cmd(args, seed_opt->count() > 0
                                           ? std::optional<std::uint64_t>(seed_arg)
                                           : std::nullopt);
    } catch (const InequalityViolated& err) {
        std::fprintf(stderr, "violation: %s\n", err.what());
        return 1;
    } catch (const OpordError& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    }
    return 2;
}
