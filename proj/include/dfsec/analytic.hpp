#pragma once

#include <optional>

#include "dfsec/model.hpp"

namespace dfsec {

/// High-SNR description of the SOP for one case in one scenario:
/// sop(gamma_d) ~ limit + slope / gamma_d. In the fixed-eavesdropper
/// scenario the limit is zero and slope is the convergence constant M_i; in
/// the scaled-eavesdropper scenario the limit is the positive floor P_i^lim
/// and slope is the residual constant Mhat_i.
struct AsymptoticResult {
    double limit;
    double slope;
    double approx;  ///< limit + slope / gamma_d, exactly
};

/// Exact secrecy outage probability Pr(capacity < r) under Rayleigh fading.
///
/// All three cases share the survival form  1 - e^{-a} * F  with
/// a = (2^r - 1)(1/gamma_r + 1/gamma_d) and F the product of the
/// eavesdropper factors 1/(1 + 2^r gamma_e / gamma) of the wiretapped hops
/// (gamma = gamma_d for case 1, gamma_r for case 2, both for case 3).
/// Evaluated as (1 - F) - F*expm1(-a) so no cancellation occurs even when
/// the result is far below 1e-15.
///
/// The conventional Case 1 variant has no closed form here (its two ratio
/// terms share the relay-eavesdropper gain); requesting it is an error.
double sop_closed_form(CaseId c, const SnrTriple& snrs, RateThreshold r);

/// Convergence constant M_i of the fixed-eavesdropper scenario
/// (gamma_r = alpha * gamma_d -> infinity, gamma_e fixed): sop ~ M_i / gamma_d.
double slope_fixed_eve(CaseId c, double alpha, double gamma_e, RateThreshold r);

/// SOP floor P_i^lim of the scaled-eavesdropper scenario
/// (gamma_r = alpha * gamma_d = beta * gamma_e -> infinity).
double sop_limit(CaseId c, double alpha, double beta, RateThreshold r);

/// Residual convergence constant Mhat_i of the scaled-eavesdropper
/// scenario: sop ~ P_i^lim + Mhat_i / gamma_d.
double slope_scaled_eve(CaseId c, double alpha, double beta, RateThreshold r);

/// Asymptotic approximation at one grid point. The regime is selected the
/// same way as snrs_from_scenario: scaling.beta for the scaled-eavesdropper
/// scenario, gamma_e_fixed for the fixed one (exactly one required).
AsymptoticResult sop_asymptotic(CaseId c, double gamma_d, const ScenarioScaling& scaling,
                                std::optional<double> gamma_e_fixed, RateThreshold r);

/// Relation of two values up to an exact-equality distinction.
enum class Rel { kLess, kEqual, kGreater };

/// Ordering verdicts across the three cases, computed from the closed
/// forms at one parameter point.
///
/// The exact-SOP chain reported in `sop_chain_derived` follows from the
/// formulas: the cases share a common exponential factor, so for
/// gamma_e > 0 the SOPs order by their eavesdropper factors, giving
/// P3 > P2 > P1 when gamma_d > gamma_r and P3 > P1 > P2 when
/// gamma_d < gamma_r. A correctness note: the literature statement this
/// check descends from has those two clauses the other way round; the
/// widely reproduced simulated ordering (and these formulas) agree with
/// the derived chain, so `sop_chain_as_written` is reported for reference
/// only and is expected to be false off the gamma_r = gamma_d diagonal.
struct OrderingReport {
    double slope_m[3];      ///< M_1..M_3 (fixed-eavesdropper constants)
    double slope_mhat[3];   ///< Mhat_1..Mhat_3
    double limit[3];        ///< P_1^lim..P_3^lim
    double sop[3];          ///< exact SOPs at `snrs`
    Rel p1_vs_p2;           ///< derived relation of P1 and P2 at `snrs`

    // Universal facts; must hold for every valid input.
    bool m3_largest;
    bool mhat3_smallest;
    bool limit3_largest;
    bool sop3_largest;

    // Branch-dependent chains implied by the slope/limit formulas at the
    // given (alpha, beta): for alpha > 1, M3 > M1 > M2, P3lim > P1lim > P2lim
    // and Mhat2 > Mhat1 > Mhat3; for alpha < 1 the 1/2 positions swap; at
    // alpha = 1 the 1 and 2 entries are exactly equal.
    bool m_chain;
    bool limit_chain;
    bool mhat_chain;

    bool sop_chain_derived;     ///< chain implied by the closed forms at `snrs`
    bool sop_chain_as_written;  ///< the literature clause evaluated verbatim
};

OrderingReport ordering_predicates(const SnrTriple& snrs, double alpha, double beta,
                                   RateThreshold r);

}  // namespace dfsec
