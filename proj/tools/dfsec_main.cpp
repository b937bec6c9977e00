// dfsec: secrecy performance of decode-and-forward relay systems under
// eavesdropping. Closed-form and Monte Carlo secrecy outage probabilities,
// high-SNR asymptotics, SNR sweeps and a self-validation suite.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfsec/analytic.hpp"
#include "dfsec/model.hpp"
#include "dfsec/monte_carlo.hpp"
#include "dfsec/sweep.hpp"
#include "dfsec/validate.hpp"

namespace {

using namespace dfsec;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct SnrFlags {
    std::optional<double> d_db, d_lin, r_db, r_lin, e_db, e_lin;

    void attach(CLI::App* sub) {
        auto add = [&](const char* db_name, const char* lin_name, const char* what,
                       std::optional<double>& db_slot, std::optional<double>& lin_slot) {
            auto* grp = sub->add_option_group(what);
            grp->add_option(db_name, db_slot, std::string("average ") + what + " SNR in dB");
            grp->add_option(lin_name, lin_slot,
                            std::string("average ") + what + " SNR, linear scale");
            grp->require_option(1);
        };
        add("--gamma-d-db", "--gamma-d", "relay-to-destination", d_db, d_lin);
        add("--gamma-r-db", "--gamma-r", "source-to-relay", r_db, r_lin);
        add("--gamma-e-db", "--gamma-e", "eavesdropper", e_db, e_lin);
    }

    SnrTriple resolve() const {
        const double gd = d_db ? db_to_linear(*d_db) : *d_lin;
        const double gr = r_db ? db_to_linear(*r_db) : *r_lin;
        const double ge = e_db ? db_to_linear(*e_db) : *e_lin;
        return SnrTriple(gr, gd, ge);
    }
};

std::vector<CaseId> resolve_cases(const std::string& flag, bool include_conventional) {
    if (flag == "all") {
        std::vector<CaseId> cases{CaseId::kCase1, CaseId::kCase2, CaseId::kCase3};
        if (include_conventional) cases.push_back(CaseId::kCase1Conventional);
        return cases;
    }
    return {case_from_string(flag)};
}

void print_eval_case(CaseId c, const SnrTriple& snrs, RateThreshold rate, std::ostream& out) {
    out.precision(6);
    out << "case " << to_string(c) << ": sop " << sop_closed_form(c, snrs, rate) << '\n';
    const double alpha = snrs.gamma_r / snrs.gamma_d;
    const AsymptoticResult fixed =
        sop_asymptotic(c, snrs.gamma_d, ScenarioScaling(alpha), snrs.gamma_e, rate);
    out << "  fixed-eve:  M " << fixed.slope << ", approx " << fixed.approx << "  (alpha "
        << alpha << ")\n";
    if (snrs.gamma_e > 0.0) {
        const double beta = snrs.gamma_r / snrs.gamma_e;
        const AsymptoticResult scaled =
            sop_asymptotic(c, snrs.gamma_d, ScenarioScaling(alpha, beta), std::nullopt, rate);
        out << "  scaled-eve: limit " << scaled.limit << ", Mhat " << scaled.slope
            << ", approx " << scaled.approx << "  (beta " << beta << ")\n";
    }
}

int run_eval(const SnrFlags& snr_flags, const std::string& case_flag, double rate_bits) {
    const SnrTriple snrs = snr_flags.resolve();
    const RateThreshold rate(rate_bits);
    for (CaseId c : resolve_cases(case_flag, /*include_conventional=*/false)) {
        if (!has_closed_form(c))
            throw ValidationError(
                "the conventional Case 1 variant has no closed form; use the mc subcommand");
        print_eval_case(c, snrs, rate, std::cout);
    }
    return kExitOk;
}

SweepRow point_row(CaseId c, const SnrTriple& snrs, RateThreshold rate, const SopEstimate& est) {
    SweepRow row;
    row.case_id = c;
    row.gamma_d_db = linear_to_db(snrs.gamma_d);
    row.gamma_r_db = linear_to_db(snrs.gamma_r);
    row.gamma_e_db = linear_to_db(snrs.gamma_e);
    row.rate = rate.bits;
    if (has_closed_form(c)) row.sop_analytic = sop_closed_form(c, snrs, rate);
    row.sop_mc = est.value;
    row.mc_ci_low = est.ci_low;
    row.mc_ci_high = est.ci_high;
    return row;
}

int run_mc(const SnrFlags& snr_flags, const std::string& case_flag, double rate_bits,
           std::uint64_t samples, std::uint64_t seed, unsigned workers,
           std::optional<double> target_rel_halfwidth, std::uint64_t max_samples,
           const std::string& out_path, const std::string& format_flag) {
    const SnrTriple snrs = snr_flags.resolve();
    const RateThreshold rate(rate_bits);
    std::vector<SweepRow> rows;
    std::cout.precision(6);
    for (CaseId c : resolve_cases(case_flag, /*include_conventional=*/true)) {
        const SopEstimate est =
            target_rel_halfwidth
                ? estimate_sop_adaptive(c, snrs, rate, *target_rel_halfwidth, max_samples, seed,
                                        workers)
                : estimate_sop(c, snrs, rate, samples, seed, workers);
        std::cout << "case " << to_string(c) << ": sop_mc " << est.value << "  ci95 ["
                  << est.ci_low << ", " << est.ci_high << "]  n " << est.n << "  seed "
                  << est.seed;
        if (has_closed_form(c))
            std::cout << "  closed-form " << sop_closed_form(c, snrs, rate);
        if (!est.target_met) std::cout << "  (target half-width not met)";
        std::cout << '\n';
        rows.push_back(point_row(c, snrs, rate, est));
    }
    if (!out_path.empty())
        write_table(rows, out_path, format_from_string(format_flag));
    return kExitOk;
}

int run_sweep_cmd(const SweepSpec& spec, const std::string& out_path,
                  const std::string& format_flag, bool verbose) {
    const std::vector<SweepRow> rows = run_sweep(spec);
    const TableFormat format = format_from_string(format_flag);
    if (out_path.empty()) {
        write_table(rows, std::cout, format);
    } else {
        write_table(rows, out_path, format);
    }
    if (verbose) {
        std::cerr.precision(6);
        std::cerr << "# " << to_string(spec.scenario) << " sweep, alpha " << spec.alpha;
        if (spec.beta) std::cerr << ", beta " << *spec.beta;
        if (spec.gamma_e_fixed) std::cerr << ", gamma_e " << *spec.gamma_e_fixed;
        std::cerr << ", rate " << spec.rate_bits << ", " << rows.size() << " rows\n";
        for (const SweepRow& row : rows) {
            std::cerr << "case " << to_string(row.case_id) << "  gamma_d " << row.gamma_d_db
                      << " dB  analytic "
                      << (row.sop_analytic ? std::to_string(*row.sop_analytic) : "-") << "  mc "
                      << (row.sop_mc ? std::to_string(*row.sop_mc) : "-") << '\n';
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Secrecy outage analysis for decode-and-forward relaying under eavesdropping.\n"
        "SNR flags ending in -db take decibels; the matching bare flags take linear scale."};
    app.require_subcommand(1);

    // eval
    auto* eval = app.add_subcommand(
        "eval", "Closed-form SOP, asymptotic approximations, limits and slope constants");
    SnrFlags eval_snrs;
    eval_snrs.attach(eval);
    std::string eval_case = "all";
    double eval_rate = 1.0;
    eval->add_option("--case", eval_case, "wiretap case: 1, 2, 3 or all (1conv is MC-only)")
        ->check(CLI::IsMember({"1", "2", "3", "1conv", "all"}));
    eval->add_option("--rate", eval_rate, "target secrecy rate, bits per channel use")
        ->required();

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo SOP estimate with 95% Wilson interval");
    SnrFlags mc_snrs;
    mc_snrs.attach(mc);
    std::string mc_case = "all";
    double mc_rate = 1.0;
    std::uint64_t mc_samples = 1000000, mc_seed = 42, mc_max_samples = 100000000;
    unsigned mc_workers = 0;
    std::optional<double> mc_target;
    std::string mc_out, mc_format = "csv";
    mc->add_option("--case", mc_case, "wiretap case: 1, 2, 3, 1conv or all")
        ->check(CLI::IsMember({"1", "2", "3", "1conv", "all"}));
    mc->add_option("--rate", mc_rate, "target secrecy rate, bits per channel use")->required();
    mc->add_option("--samples", mc_samples, "number of channel draws");
    mc->add_option("--seed", mc_seed, "random stream seed");
    mc->add_option("--workers", mc_workers, "worker threads (0 = hardware)");
    mc->add_option("--target-rel-halfwidth", mc_target,
                   "adaptive mode: stop once CI half-width <= target * estimate");
    mc->add_option("--max-samples", mc_max_samples, "adaptive mode sample budget");
    mc->add_option("--out", mc_out, "write the estimate as a table row to this file");
    mc->add_option("--format", mc_format, "table format")->check(CLI::IsMember({"csv", "jsonl"}));

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "SOP sweep over the destination SNR; analytic, asymptotic and MC columns");
    SweepSpec spec;
    std::string sweep_case = "all", sweep_scenario = "fixed-eve";
    std::optional<double> sweep_gamma_e_db, sweep_beta;
    std::string sweep_out, sweep_format = "csv";
    bool sweep_verbose = false;
    sweep->add_option("--case", sweep_case, "wiretap case: 1, 2, 3, 1conv or all")
        ->check(CLI::IsMember({"1", "2", "3", "1conv", "all"}));
    sweep->add_option("--scenario", sweep_scenario, "fixed-eve or scaled-eve")
        ->check(CLI::IsMember({"fixed-eve", "scaled-eve"}));
    sweep->add_option("--from-db", spec.gamma_d_db_start, "gamma_d grid start, dB");
    sweep->add_option("--to-db", spec.gamma_d_db_stop, "gamma_d grid stop, dB");
    sweep->add_option("--step-db", spec.gamma_d_db_step, "gamma_d grid step, dB");
    sweep->add_option("--alpha", spec.alpha, "gamma_r / gamma_d ratio");
    sweep->add_option("--beta", sweep_beta, "gamma_r / gamma_e ratio (scaled-eve)");
    sweep->add_option("--gamma-e-db", sweep_gamma_e_db, "fixed eavesdropper SNR, dB");
    sweep->add_option("--rate", spec.rate_bits, "target secrecy rate, bits per channel use");
    sweep->add_option("--samples", spec.mc_samples, "MC draws per grid point (0 disables MC)");
    sweep->add_option("--seed", spec.seed, "random stream seed");
    sweep->add_option("--workers", spec.workers, "worker threads (0 = hardware)");
    sweep->add_option("--out", sweep_out, "output file (default: stdout)");
    sweep->add_option("--format", sweep_format, "table format")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    sweep->add_flag("--verbose", sweep_verbose, "human-readable summary on stderr");

    // validate
    auto* validate = app.add_subcommand(
        "validate", "Self-validation: every module property, orderings and MC agreement");
    ValidationOptions vopts;
    validate->add_option("--seed", vopts.seed, "random stream seed");
    validate->add_option("--trials", vopts.trials, "draws for pointwise capacity properties");
    validate->add_option("--samples", vopts.mc_samples, "MC samples per agreement cell");
    validate->add_option("--workers", vopts.workers, "worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval->parsed()) return run_eval(eval_snrs, eval_case, eval_rate);
        if (mc->parsed())
            return run_mc(mc_snrs, mc_case, mc_rate, mc_samples, mc_seed, mc_workers, mc_target,
                          mc_max_samples, mc_out, mc_format);
        if (sweep->parsed()) {
            spec.scenario = scenario_from_string(sweep_scenario);
            spec.cases = resolve_cases(sweep_case, /*include_conventional=*/false);
            spec.beta = sweep_beta;
            if (sweep_gamma_e_db) spec.gamma_e_fixed = db_to_linear(*sweep_gamma_e_db);
            if (spec.scenario == Scenario::kFixedEve && !spec.gamma_e_fixed)
                spec.gamma_e_fixed = db_to_linear(1.0);
            return run_sweep_cmd(spec, sweep_out, sweep_format, sweep_verbose);
        }
        if (validate->parsed()) {
            const ValidationReport report = run_validation(vopts);
            print_report(report, std::cout);
            return report.all_gating_passed() ? kExitOk : kExitValidation;
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}
