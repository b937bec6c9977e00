#include "dfsec/analytic.hpp"

#include <cmath>

namespace dfsec {

namespace {

double pow2m1(double r_bits) { return std::exp2(r_bits) - 1.0; }

void require_closed_form(CaseId c) {
    if (!has_closed_form(c))
        throw ValidationError(
            "no closed-form SOP for the conventional Case 1 expression; "
            "estimate it by Monte Carlo instead");
}

// 1 - e^{-a} / ((1+x_d)(1+x_r)) without cancellation. x_d and x_r are the
// eavesdropper factor arguments of the two hops; a hop the eavesdropper
// cannot hear contributes x = 0.
double outage_from_factors(double a, double x_d, double x_r) {
    const double cross = x_d + x_r + x_d * x_r;        // (1+x_d)(1+x_r) - 1
    return (cross - std::expm1(-a)) / ((1.0 + x_d) * (1.0 + x_r));
}

}  // namespace

double sop_closed_form(CaseId c, const SnrTriple& snrs, RateThreshold r) {
    require_closed_form(c);
    const double tm1 = pow2m1(r.bits);
    const double t = tm1 + 1.0;
    const double a = tm1 * (1.0 / snrs.gamma_r + 1.0 / snrs.gamma_d);
    const double x_d = t * snrs.gamma_e / snrs.gamma_d;
    const double x_r = t * snrs.gamma_e / snrs.gamma_r;
    switch (c) {
        case CaseId::kCase1: return outage_from_factors(a, x_d, 0.0);
        case CaseId::kCase2: return outage_from_factors(a, 0.0, x_r);
        case CaseId::kCase3: return outage_from_factors(a, x_d, x_r);
        default: break;
    }
    throw ValidationError("unknown CaseId");
}

double slope_fixed_eve(CaseId c, double alpha, double gamma_e, RateThreshold r) {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw ValidationError("alpha must be > 0");
    if (!(std::isfinite(gamma_e) && gamma_e >= 0.0)) throw ValidationError("gamma_e must be >= 0");
    require_closed_form(c);
    const double tm1 = pow2m1(r.bits);
    const double t = tm1 + 1.0;
    const double base = tm1 * (1.0 + 1.0 / alpha);
    switch (c) {
        case CaseId::kCase1: return base + t * gamma_e;
        case CaseId::kCase2: return base + t * gamma_e / alpha;
        case CaseId::kCase3: return base + t * gamma_e * (1.0 + 1.0 / alpha);
        default: break;
    }
    throw ValidationError("unknown CaseId");
}

namespace {

void check_alpha_beta(double alpha, double beta) {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw ValidationError("alpha must be > 0");
    if (!(std::isfinite(beta) && beta > 0.0)) throw ValidationError("beta must be > 0");
}

}  // namespace

double sop_limit(CaseId c, double alpha, double beta, RateThreshold r) {
    check_alpha_beta(alpha, beta);
    require_closed_form(c);
    const double t = pow2m1(r.bits) + 1.0;
    const double x_d = alpha / beta * t;  // limit of 2^r gamma_e / gamma_d
    const double x_r = t / beta;          // limit of 2^r gamma_e / gamma_r
    switch (c) {
        case CaseId::kCase1: return x_d / (1.0 + x_d);
        case CaseId::kCase2: return x_r / (1.0 + x_r);
        case CaseId::kCase3:
            return (x_d + x_r + x_d * x_r) / ((1.0 + x_d) * (1.0 + x_r));
        default: break;
    }
    throw ValidationError("unknown CaseId");
}

double slope_scaled_eve(CaseId c, double alpha, double beta, RateThreshold r) {
    check_alpha_beta(alpha, beta);
    require_closed_form(c);
    const double tm1 = pow2m1(r.bits);
    const double t = tm1 + 1.0;
    const double numer = tm1 * (1.0 + 1.0 / alpha);
    switch (c) {
        case CaseId::kCase1: return numer / (1.0 + alpha / beta * t);
        case CaseId::kCase2: return numer / (1.0 + t / beta);
        case CaseId::kCase3: return numer / ((1.0 + alpha / beta * t) * (1.0 + t / beta));
        default: break;
    }
    throw ValidationError("unknown CaseId");
}

AsymptoticResult sop_asymptotic(CaseId c, double gamma_d, const ScenarioScaling& scaling,
                                std::optional<double> gamma_e_fixed, RateThreshold r) {
    if (!(std::isfinite(gamma_d) && gamma_d > 0.0))
        throw ValidationError("gamma_d must be finite and > 0");
    if (scaling.beta.has_value() == gamma_e_fixed.has_value())
        throw ValidationError(
            "exactly one eavesdropper specification required: scaling.beta or gamma_e_fixed");
    AsymptoticResult res{};
    if (scaling.beta) {
        res.limit = sop_limit(c, scaling.alpha, *scaling.beta, r);
        res.slope = slope_scaled_eve(c, scaling.alpha, *scaling.beta, r);
    } else {
        res.limit = 0.0;
        res.slope = slope_fixed_eve(c, scaling.alpha, *gamma_e_fixed, r);
    }
    res.approx = res.limit + res.slope / gamma_d;
    return res;
}

namespace {

Rel relation(double a, double b) {
    if (a < b) return Rel::kLess;
    if (a > b) return Rel::kGreater;
    return Rel::kEqual;
}

bool chain_holds(double hi, double mid, double lo, bool mid_equals_lo) {
    return mid_equals_lo ? (hi > mid && mid == lo) : (hi > mid && mid > lo);
}

}  // namespace

OrderingReport ordering_predicates(const SnrTriple& snrs, double alpha, double beta,
                                   RateThreshold r) {
    check_alpha_beta(alpha, beta);
    OrderingReport rep{};
    const CaseId cases[3] = {CaseId::kCase1, CaseId::kCase2, CaseId::kCase3};
    for (int i = 0; i < 3; ++i) {
        rep.slope_m[i] = slope_fixed_eve(cases[i], alpha, snrs.gamma_e, r);
        rep.slope_mhat[i] = slope_scaled_eve(cases[i], alpha, beta, r);
        rep.limit[i] = sop_limit(cases[i], alpha, beta, r);
        rep.sop[i] = sop_closed_form(cases[i], snrs, r);
    }
    rep.p1_vs_p2 = relation(rep.sop[0], rep.sop[1]);

    rep.m3_largest = rep.slope_m[2] >= rep.slope_m[0] && rep.slope_m[2] >= rep.slope_m[1];
    rep.mhat3_smallest =
        rep.slope_mhat[2] <= rep.slope_mhat[0] && rep.slope_mhat[2] <= rep.slope_mhat[1];
    rep.limit3_largest = rep.limit[2] >= rep.limit[0] && rep.limit[2] >= rep.limit[1];
    rep.sop3_largest = rep.sop[2] >= rep.sop[0] && rep.sop[2] >= rep.sop[1];

    // Strictness of the 1-vs-2 comparisons degenerates to equality exactly
    // at alpha = 1 (for slopes/limits) or gamma_e = 0 (slopes coincide too).
    const bool eq12_m = rep.slope_m[0] == rep.slope_m[1];
    const bool eq12_lim = rep.limit[0] == rep.limit[1];
    const bool eq12_mhat = rep.slope_mhat[0] == rep.slope_mhat[1];
    if (alpha > 1.0) {
        rep.m_chain = chain_holds(rep.slope_m[2], rep.slope_m[0], rep.slope_m[1], eq12_m);
        rep.limit_chain = chain_holds(rep.limit[2], rep.limit[0], rep.limit[1], eq12_lim);
        rep.mhat_chain =
            chain_holds(rep.slope_mhat[1], rep.slope_mhat[0], rep.slope_mhat[2], false);
    } else if (alpha < 1.0) {
        rep.m_chain = chain_holds(rep.slope_m[2], rep.slope_m[1], rep.slope_m[0], eq12_m);
        rep.limit_chain = chain_holds(rep.limit[2], rep.limit[1], rep.limit[0], eq12_lim);
        rep.mhat_chain =
            chain_holds(rep.slope_mhat[0], rep.slope_mhat[1], rep.slope_mhat[2], false);
    } else {
        rep.m_chain = eq12_m && rep.slope_m[2] > rep.slope_m[0];
        rep.limit_chain = eq12_lim && rep.limit[2] > rep.limit[0];
        rep.mhat_chain = eq12_mhat && rep.slope_mhat[2] < rep.slope_mhat[0];
    }
    if (snrs.gamma_e == 0.0) {
        // Degenerate system: the eavesdropper factors vanish, all slopes and
        // limits of a chain coincide pairwise only where gamma_e multiplies
        // them; the SOP chain collapses to full equality.
        rep.sop_chain_derived = rep.sop[0] == rep.sop[1] && rep.sop[1] == rep.sop[2];
        rep.sop_chain_as_written = rep.sop_chain_derived;
        return rep;
    }

    if (snrs.gamma_d > snrs.gamma_r) {
        rep.sop_chain_derived = rep.sop[2] > rep.sop[1] && rep.sop[1] > rep.sop[0];
        rep.sop_chain_as_written = rep.sop[2] > rep.sop[0] && rep.sop[0] > rep.sop[1];
    } else if (snrs.gamma_d < snrs.gamma_r) {
        rep.sop_chain_derived = rep.sop[2] > rep.sop[0] && rep.sop[0] > rep.sop[1];
        rep.sop_chain_as_written =
            rep.sop[2] > rep.sop[1] && rep.sop[1] >= rep.sop[0];
    } else {
        rep.sop_chain_derived = rep.sop[2] > rep.sop[0] && rep.sop[0] == rep.sop[1];
        rep.sop_chain_as_written = rep.sop[2] > rep.sop[1] && rep.sop[1] >= rep.sop[0];
    }
    return rep;
}

}  // namespace dfsec
