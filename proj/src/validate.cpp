#include "dfsec/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "dfsec/analytic.hpp"
#include "dfsec/capacity.hpp"
#include "dfsec/monte_carlo.hpp"
#include "dfsec/sampler.hpp"
#include "dfsec/sweep.hpp"

namespace dfsec {

namespace {

using SopFn = std::function<double(CaseId, const SnrTriple&, RateThreshold)>;

constexpr CaseId kThreeCases[3] = {CaseId::kCase1, CaseId::kCase2, CaseId::kCase3};

struct Checker {
    std::vector<CheckResult> results;

    void add(std::string name, bool pass, std::string detail, bool gating = true) {
        results.push_back(CheckResult{std::move(name), pass, gating, std::move(detail)});
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

// Ranges are kept moderate so the exact SOP stays representably inside
// [0, 1); pushing all parameters to extremes at once rounds the survival
// probability below one ulp.
SnrTriple random_snrs(std::mt19937_64& rng) {
    return SnrTriple(log_uniform(rng, 0.5, 250.0), log_uniform(rng, 0.5, 250.0),
                     log_uniform(rng, 0.02, 20.0));
}

RateThreshold random_rate(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.25, 2.0);
    return RateThreshold(u(rng));
}

void check_capacity_properties(Checker& chk, const ValidationOptions& opts) {
    std::mt19937_64 rng(opts.seed);
    const SampleStream stream{opts.seed, 7};
    bool clamp_ok = true, dominance_ok = true, monotone_ok = true, no_eve_ok = true;
    double max_violation = 0.0;
    for (std::uint64_t i = 0; i < opts.trials; ++i) {
        const ChannelDraw g = sample_draw(stream, i);
        const SnrTriple snrs = random_snrs(rng);
        const CapacityBreakdown r1 = capacity_case1(g, snrs);
        const CapacityBreakdown r2 = capacity_case2(g, snrs);
        const CapacityBreakdown r3 = capacity_case3(g, snrs);
        const double rc = capacity_case1_conventional(g, snrs);

        for (const CapacityBreakdown& r : {r1, r2, r3}) {
            if (!(r.end_to_end >= 0.0) ||
                r.end_to_end != std::max(std::min(r.hop_sr, r.hop_rd), 0.0))
                clamp_ok = false;
        }
        if (!(rc >= 0.0)) clamp_ok = false;
        if (r3.end_to_end > r1.end_to_end || r3.end_to_end > r2.end_to_end ||
            rc > r1.end_to_end) {
            dominance_ok = false;
            max_violation = std::max(max_violation, r3.end_to_end - r1.end_to_end);
        }

        if (i % 16 == 0) {
            // Directional perturbations: capacity must not decrease when a
            // legitimate SNR or gain grows, nor increase when an
            // eavesdropper one does.
            const SnrTriple up_d(snrs.gamma_r, snrs.gamma_d * 1.5, snrs.gamma_e);
            const SnrTriple up_e(snrs.gamma_r, snrs.gamma_d, snrs.gamma_e * 1.5 + 0.01);
            ChannelDraw g_up = g;
            g_up.g_sr *= 1.5;
            ChannelDraw g_worse = g;
            g_worse.g_re *= 1.5;
            g_worse.g_re += 0.01;
            for (CaseId c : kThreeCases) {
                const double base = capacity_for(c, g, snrs).end_to_end;
                if (capacity_for(c, g, up_d).end_to_end < base) monotone_ok = false;
                if (capacity_for(c, g, up_e).end_to_end > base) monotone_ok = false;
                if (capacity_for(c, g_up, snrs).end_to_end < base) monotone_ok = false;
                if (capacity_for(c, g_worse, snrs).end_to_end > base) monotone_ok = false;
            }

            const SnrTriple no_eve(snrs.gamma_r, snrs.gamma_d, 0.0);
            const double df = std::max(
                std::min(std::log1p(snrs.gamma_r * g.g_sr), std::log1p(snrs.gamma_d * g.g_rd)) /
                    std::numbers::ln2,
                0.0);
            for (CaseId c : kThreeCases) {
                if (std::abs(capacity_for(c, g, no_eve).end_to_end - df) > 1e-12)
                    no_eve_ok = false;
            }
        }
    }
    chk.add("capacity-clamping", clamp_ok,
            "end_to_end = max(min(hops), 0) >= 0 on " + std::to_string(opts.trials) + " draws");
    chk.add("capacity-pointwise-dominance", dominance_ok,
            "R3 <= min(R1, R2) and conventional <= R1 on every draw");
    chk.add("capacity-monotonicity", monotone_ok,
            "directional perturbations of SNRs and gains");
    chk.add("capacity-no-eavesdropper-coincidence", no_eve_ok,
            "gamma_e = 0 collapses all cases to the plain two-hop capacity");
}

void check_sampler(Checker& chk, const ValidationOptions& opts) {
    const std::uint64_t n = std::max<std::uint64_t>(opts.trials, 10000);
    const SampleStream stream{opts.seed, 1};

    double sum = 0.0, sum2 = 0.0, cross = 0.0;
    std::array<double, 4> comp_sum{};
    std::uint64_t tail = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const ChannelDraw g = sample_draw(stream, i);
        sum += g.g_sr;
        sum2 += g.g_sr * g.g_sr;
        cross += g.g_sr * g.g_rd;
        comp_sum[0] += g.g_sr;
        comp_sum[1] += g.g_rd;
        comp_sum[2] += g.g_se;
        comp_sum[3] += g.g_re;
        tail += g.g_sr > 1.0;
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = sum2 / nn - mean * mean;
    const double cov = cross / nn - (comp_sum[0] / nn) * (comp_sum[1] / nn);
    const double tail_p = static_cast<double>(tail) / nn;
    // 5-sigma bands around the unit-exponential moments.
    const double tol_mean = 5.0 / std::sqrt(nn);
    bool moments_ok = std::abs(mean - 1.0) < tol_mean && std::abs(var - 1.0) < 5.0 * tol_mean &&
                      std::abs(cov) < 8.0 / std::sqrt(nn) &&
                      std::abs(tail_p - std::exp(-1.0)) < 5.0 * 0.48 / std::sqrt(nn);
    for (double s : comp_sum) {
        if (std::abs(s / nn - 1.0) >= tol_mean) moments_ok = false;
    }
    chk.add("sampler-moments", moments_ok,
            "mean " + fmt(mean) + ", var " + fmt(var) + ", P(X>1) " + fmt(tail_p) + ", cov " +
                fmt(cov) + " over " + std::to_string(n) + " draws");

    const std::uint64_t ks_n = std::min<std::uint64_t>(n, 100000);
    std::vector<double> xs(ks_n);
    for (std::uint64_t i = 0; i < ks_n; ++i) {
        xs[i] = sample_exponential_unit(SampleStream{opts.seed, 2}, i);
    }
    std::sort(xs.begin(), xs.end());
    double dmax = 0.0;
    for (std::uint64_t i = 0; i < ks_n; ++i) {
        const double cdf = -std::expm1(-xs[i]);
        const double lo = static_cast<double>(i) / static_cast<double>(ks_n);
        const double hi = static_cast<double>(i + 1) / static_cast<double>(ks_n);
        dmax = std::max({dmax, cdf - lo, hi - cdf});
    }
    const double critical = 1.6276236307187293 / std::sqrt(static_cast<double>(ks_n));
    chk.add("sampler-ks", dmax < critical,
            "D = " + fmt(dmax) + " vs critical " + fmt(critical) + " at significance 0.01");

    bool det_ok = true;
    for (std::uint64_t i = 0; i < 64; ++i) {
        const ChannelDraw a = sample_draw(SampleStream{opts.seed, 3}, i);
        const ChannelDraw b = sample_draw(SampleStream{opts.seed, 3}, i);
        const ChannelDraw other = sample_draw(SampleStream{opts.seed, 4}, i);
        if (a.g_sr != b.g_sr || a.g_rd != b.g_rd || a.g_se != b.g_se || a.g_re != b.g_re)
            det_ok = false;
        if (a.g_sr == other.g_sr && a.g_rd == other.g_rd) det_ok = false;
    }
    chk.add("sampler-determinism", det_ok,
            "repeated (seed, stream, position) draws identical; sibling streams differ");
}

void check_closed_form(Checker& chk, const ValidationOptions& opts, const SopFn& sop) {
    std::mt19937_64 rng(opts.seed + 1);
    bool range_ok = true, monotone_ok = true, symmetry_ok = true, dominance_ok = true;
    for (int i = 0; i < 2000; ++i) {
        const SnrTriple snrs = random_snrs(rng);
        const RateThreshold r = random_rate(rng);
        double p[3];
        for (int c = 0; c < 3; ++c) {
            p[c] = sop(kThreeCases[c], snrs, r);
            if (!(p[c] >= 0.0 && p[c] < 1.0)) range_ok = false;
        }
        if (!(p[2] >= p[0] && p[2] >= p[1])) dominance_ok = false;

        const SnrTriple swapped(snrs.gamma_d, snrs.gamma_r, snrs.gamma_e);
        if (sop(CaseId::kCase1, snrs, r) != sop(CaseId::kCase2, swapped, r)) symmetry_ok = false;

        const RateThreshold r_up(r.bits * 1.25);
        const SnrTriple d_up(snrs.gamma_r, snrs.gamma_d * 1.25, snrs.gamma_e);
        const SnrTriple r_snr_up(snrs.gamma_r * 1.25, snrs.gamma_d, snrs.gamma_e);
        const SnrTriple e_up(snrs.gamma_r, snrs.gamma_d, snrs.gamma_e * 1.25 + 0.01);
        for (CaseId c : kThreeCases) {
            const double base = sop(c, snrs, r);
            if (!(sop(c, snrs, r_up) > base)) monotone_ok = false;
            if (!(sop(c, d_up, r) < base)) monotone_ok = false;
            if (!(sop(c, r_snr_up, r) < base)) monotone_ok = false;
            if (!(sop(c, e_up, r) > base)) monotone_ok = false;
        }
    }
    chk.add("closedform-range", range_ok, "SOP in [0, 1) over 2000 random parameter points");
    chk.add("closedform-monotonicity", monotone_ok,
            "strictly increasing in rate and gamma_e, decreasing in gamma_d and gamma_r");
    chk.add("closedform-case12-symmetry", symmetry_ok,
            "case 1 equals case 2 with gamma_r and gamma_d exchanged, exactly");
    chk.add("closedform-dominance", dominance_ok, "P3 >= max(P1, P2) everywhere");

    // Survival-function factorization: the case 3 survival is the shared
    // exponential times both single-hop eavesdropper factors, so
    // 1 - P3 = (1 - P1)(1 - P2)/(1 - P0) with P0 the no-eavesdropper SOP.
    bool factor_ok = true;
    double worst = 0.0;
    std::mt19937_64 rng2(opts.seed + 2);
    for (int i = 0; i < 2000; ++i) {
        const double gr = log_uniform(rng2, 2.0, 50.0);
        const double gd = log_uniform(rng2, 2.0, 50.0);
        std::uniform_real_distribution<double> ue(0.0, 1.0);
        std::uniform_real_distribution<double> ur(0.25, 1.5);
        const SnrTriple snrs(gr, gd, ue(rng2));
        const RateThreshold r(ur(rng2));
        const double p0 = sop(CaseId::kCase1, SnrTriple(gr, gd, 0.0), r);
        const double lhs = 1.0 - sop(CaseId::kCase3, snrs, r);
        const double rhs =
            (1.0 - sop(CaseId::kCase1, snrs, r)) * (1.0 - sop(CaseId::kCase2, snrs, r)) /
            (1.0 - p0);
        const double rel = std::abs(lhs - rhs) / rhs;
        worst = std::max(worst, rel);
        if (rel > 1e-12) factor_ok = false;
    }
    chk.add("case3-factorization", factor_ok,
            "1-P3 = (1-P1)(1-P2)/(1-P0), worst relative error " + fmt(worst));
}

void check_asymptotics(Checker& chk, const SopFn& sop) {
    // Scaled-eve approximation degenerates to the fixed-eve one as beta
    // grows with gamma_d held: the gap must shrink monotonically to zero.
    bool consistency_ok = true;
    const double gamma_d = 100.0;
    for (CaseId c : kThreeCases) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const RateThreshold r(1.0);
            double prev = std::numeric_limits<double>::infinity();
            double gap = prev;
            for (double beta : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
                const double gamma_e = alpha * gamma_d / beta;
                const double fixed =
                    sop_asymptotic(c, gamma_d, ScenarioScaling(alpha), gamma_e, r).approx;
                const double scaled =
                    sop_asymptotic(c, gamma_d, ScenarioScaling(alpha, beta), std::nullopt, r)
                        .approx;
                gap = std::abs(scaled - fixed);
                if (gap > prev) consistency_ok = false;
                prev = gap;
            }
            if (gap > 1e-6) consistency_ok = false;
        }
    }
    chk.add("asymptotic-regime-consistency", consistency_ok,
            "scaled-eve approximation meets the fixed-eve one along a beta ladder");

    // Residual convergence: (P - Plim) * gamma_d approaches Mhat.
    bool limit_ok = true;
    double worst = 0.0;
    for (CaseId c : kThreeCases) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (double beta : {0.5, 1.0, 4.0}) {
                const RateThreshold r(1.0);
                for (double gamma_d_hi : {1e4, 1e5}) {
                    const SnrTriple snrs = snrs_from_scenario(
                        gamma_d_hi, ScenarioScaling(alpha, beta), std::nullopt);
                    const double plim = sop_limit(c, alpha, beta, r);
                    const double mhat = slope_scaled_eve(c, alpha, beta, r);
                    const double rel =
                        std::abs((sop(c, snrs, r) - plim) * gamma_d_hi - mhat) / mhat;
                    worst = std::max(worst, rel);
                    if (rel > 0.02) limit_ok = false;
                }
            }
        }
    }
    chk.add("limit-attainment", limit_ok,
            "(P - Plim) * gamma_d within 2% of Mhat at gamma_d >= 1e4, worst " + fmt(worst));
}

void check_diversity_order(Checker& chk) {
    bool ok = true;
    std::string detail;
    for (CaseId c : kThreeCases) {
        SweepSpec spec;
        spec.scenario = Scenario::kFixedEve;
        spec.cases = {c};
        spec.alpha = 0.5;
        spec.gamma_e_fixed = db_to_linear(1.0);
        spec.rate_bits = 1.0;
        spec.mc_samples = 0;
        const std::vector<SweepRow> rows = run_sweep(spec);
        const double sdo = fit_diversity_order(rows, {30.0, 50.0});
        if (std::abs(sdo - 1.0) > 0.05) ok = false;
        detail += to_string(c) + ": " + fmt(sdo) + "  ";
    }
    chk.add("diversity-order-fit", ok, "log-log slope over 30-50 dB, " + detail);
}

void check_orderings(Checker& chk, const ValidationOptions& opts, const SopFn& sop) {
    std::mt19937_64 rng(opts.seed + 3);
    bool chains_ok = true, universal_ok = true, derived_ok = true;
    std::uint64_t as_written_hits = 0, as_written_total = 0;
    const RateThreshold probe_rate(1.0);

    auto run_cell = [&](double alpha, double beta, const SnrTriple& snrs, RateThreshold r) {
        const OrderingReport rep = ordering_predicates(snrs, alpha, beta, r);
        if (!(rep.m_chain && rep.limit_chain && rep.mhat_chain)) chains_ok = false;
        if (!(rep.m3_largest && rep.mhat3_smallest && rep.limit3_largest && rep.sop3_largest))
            universal_ok = false;
        if (!rep.sop_chain_derived) derived_ok = false;
        ++as_written_total;
        as_written_hits += rep.sop_chain_as_written;
        // Cross-check the raw SOP relation against the hookable evaluator.
        const double p1 = sop(CaseId::kCase1, snrs, r);
        const double p2 = sop(CaseId::kCase2, snrs, r);
        const bool expect_p2_larger = snrs.gamma_d > snrs.gamma_r && snrs.gamma_e > 0.0;
        if (expect_p2_larger && !(p2 > p1)) derived_ok = false;
    };

    for (int i = 0; i < 500; ++i) {
        const double alpha = log_uniform(rng, 0.2, 5.0);
        const double beta = log_uniform(rng, 0.2, 5.0);
        const RateThreshold r = random_rate(rng);
        const double gamma_d = log_uniform(rng, 1.0, 100.0);
        const double gamma_e = log_uniform(rng, 0.05, 20.0);
        run_cell(alpha, beta, SnrTriple(alpha * gamma_d, gamma_d, gamma_e), r);
    }
    // Exact alpha = 1 symmetry must yield exact slope/limit equality.
    const OrderingReport sym =
        ordering_predicates(SnrTriple(10.0, 10.0, 1.0), 1.0, 1.0, probe_rate);
    const bool alpha1_ok = sym.slope_m[0] == sym.slope_m[1] &&
                           sym.slope_mhat[0] == sym.slope_mhat[1] &&
                           sym.limit[0] == sym.limit[1] && sym.p1_vs_p2 == Rel::kEqual;

    chk.add("ordering-slope-limit-chains", chains_ok && alpha1_ok,
            "M, Mhat and Plim chains across both alpha branches, exact ties at alpha = 1");
    chk.add("ordering-universal-facts", universal_ok,
            "M3 largest, Mhat3 smallest, P3lim and P3 largest on every cell");
    chk.add("sop-ordering-derived", derived_ok,
            "P3 > P2 > P1 for gamma_d > gamma_r, P3 > P1 > P2 otherwise (gamma_e > 0)");

    // The as-written literature clause swaps the two branches; report how
    // it fares without letting it gate the run.
    const OrderingReport probe = ordering_predicates(
        snrs_from_scenario(100.0, ScenarioScaling(0.5), db_to_linear(1.0)), 0.5, 1.0,
        probe_rate);
    std::ostringstream os;
    os << "as-written clause holds on " << as_written_hits << "/" << as_written_total
       << " random cells; at gamma_r = 0.5 gamma_d: derived P3>P2>P1 = "
       << (probe.sop_chain_derived ? "true" : "false")
       << ", as-written P3>P1>P2 = " << (probe.sop_chain_as_written ? "true" : "false");
    chk.add("sop-ordering-literature-verdict", true, os.str(), /*gating=*/false);
}

void check_monte_carlo(Checker& chk, const ValidationOptions& opts, const SopFn& sop) {
    const RateThreshold r(1.0);
    const double rates[1] = {r.bits};
    bool agree_ok = true, paired_ok = true;
    double worst_z = 0.0;
    for (const SnrTriple& snrs :
         {SnrTriple(10.0, 10.0, 1.0), SnrTriple(50.0, 100.0, 10.0), SnrTriple(4.0, 2.0, 0.5)}) {
        const OutageCounts counts =
            count_outages(snrs, rates, opts.mc_samples, opts.seed, opts.workers);
        for (CaseId c : kThreeCases) {
            const double expected = sop(c, snrs, r);
            const double est =
                static_cast<double>(counts.at(c, 0)) / static_cast<double>(counts.n);
            const Interval ci = wilson_interval(counts.at(c, 0), counts.n);
            const double se = (ci.high - ci.low) / (2.0 * kZ95);
            const double z = std::abs(est - expected) / se;
            worst_z = std::max(worst_z, z);
            if (z >= 4.0) agree_ok = false;
        }
        if (counts.at(CaseId::kCase3, 0) < counts.at(CaseId::kCase1, 0) ||
            counts.at(CaseId::kCase3, 0) < counts.at(CaseId::kCase2, 0) ||
            counts.at(CaseId::kCase1Conventional, 0) < counts.at(CaseId::kCase1, 0))
            paired_ok = false;
    }
    chk.add("mc-closedform-agreement", agree_ok,
            "n = " + std::to_string(opts.mc_samples) + " estimates within 4 standard errors, " +
                "worst z = " + fmt(worst_z));
    chk.add("mc-paired-dominance", paired_ok,
            "case 3 and conventional outage counts dominate on common draws");

    const SnrTriple snrs(10.0, 10.0, 1.0);
    const std::uint64_t n = std::min<std::uint64_t>(opts.mc_samples, 100000);
    const SopEstimate w1 = estimate_sop(CaseId::kCase1, snrs, r, n, opts.seed, 1);
    const SopEstimate w4 = estimate_sop(CaseId::kCase1, snrs, r, n, opts.seed, 4);
    const SopEstimate w16 = estimate_sop(CaseId::kCase1, snrs, r, n, opts.seed, 16);
    chk.add("mc-worker-independence", w1.value == w4.value && w4.value == w16.value,
            "1, 4 and 16 workers produce bit-identical estimates");
}

}  // namespace

bool ValidationReport::all_gating_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass || !c.gating; });
}

std::size_t ValidationReport::gating_count() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.gating; }));
}

ValidationReport run_validation(const ValidationOptions& opts, const ValidationHooks& hooks) {
    SopFn sop = hooks.sop_closed_form;
    if (!sop) {
        sop = [](CaseId c, const SnrTriple& s, RateThreshold r) {
            return sop_closed_form(c, s, r);
        };
    }
    Checker chk;
    check_capacity_properties(chk, opts);
    check_sampler(chk, opts);
    check_closed_form(chk, opts, sop);
    check_asymptotics(chk, sop);
    check_diversity_order(chk);
    check_orderings(chk, opts, sop);
    check_monte_carlo(chk, opts, sop);
    return ValidationReport{std::move(chk.results)};
}

void print_report(const ValidationReport& report, std::ostream& out) {
    std::size_t failed = 0;
    for (const CheckResult& c : report.checks) {
        out << (c.pass ? "[PASS]" : "[FAIL]") << (c.gating ? " " : " (info) ") << c.name << ": "
            << c.detail << '\n';
        if (!c.pass && c.gating) ++failed;
    }
    if (failed == 0) {
        out << "all " << report.gating_count() << " checks passed\n";
    } else {
        out << failed << " of " << report.gating_count() << " checks failed\n";
    }
}

}  // namespace dfsec
