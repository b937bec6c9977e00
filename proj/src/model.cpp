#include "dfsec/model.hpp"

#include <cmath>
#include <limits>

namespace dfsec {

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::kCase1: return "1";
        case CaseId::kCase2: return "2";
        case CaseId::kCase3: return "3";
        case CaseId::kCase1Conventional: return "1conv";
    }
    throw ValidationError("unknown CaseId");
}

CaseId case_from_string(std::string_view s) {
    if (s == "1") return CaseId::kCase1;
    if (s == "2") return CaseId::kCase2;
    if (s == "3") return CaseId::kCase3;
    if (s == "1conv") return CaseId::kCase1Conventional;
    throw ValidationError("unknown case '" + std::string(s) + "' (expected 1, 2, 3 or 1conv)");
}

bool has_closed_form(CaseId c) { return c != CaseId::kCase1Conventional; }

double db_to_linear(double x_db) {
    if (!std::isfinite(x_db)) throw ValidationError("dB value must be finite");
    return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
    if (std::isnan(x) || x < 0.0) throw ValidationError("linear SNR must be >= 0");
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(x);
}

SnrTriple::SnrTriple(double gamma_r_, double gamma_d_, double gamma_e_)
    : gamma_r(gamma_r_), gamma_d(gamma_d_), gamma_e(gamma_e_) {
    if (!(std::isfinite(gamma_r) && gamma_r > 0.0))
        throw ValidationError("gamma_r must be finite and > 0");
    if (!(std::isfinite(gamma_d) && gamma_d > 0.0))
        throw ValidationError("gamma_d must be finite and > 0");
    if (!(std::isfinite(gamma_e) && gamma_e >= 0.0))
        throw ValidationError("gamma_e must be finite and >= 0");
}

RateThreshold::RateThreshold(double bits_) : bits(bits_) {
    if (!(std::isfinite(bits) && bits > 0.0))
        throw ValidationError("secrecy rate threshold must be finite and > 0");
}

ScenarioScaling::ScenarioScaling(double alpha_, std::optional<double> beta_)
    : alpha(alpha_), beta(beta_) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
        throw ValidationError("alpha must be finite and > 0");
    if (beta && !(std::isfinite(*beta) && *beta > 0.0))
        throw ValidationError("beta must be finite and > 0");
}

SnrTriple snr_from_power(double p, double sigma2_r, double sigma2_d, double sigma2_e) {
    if (!(std::isfinite(p) && p > 0.0)) throw ValidationError("transmit power must be > 0");
    for (double s2 : {sigma2_r, sigma2_d, sigma2_e}) {
        if (!(std::isfinite(s2) && s2 > 0.0)) throw ValidationError("noise powers must be > 0");
    }
    return SnrTriple(p / (2.0 * sigma2_r), p / (2.0 * sigma2_d), p / (2.0 * sigma2_e));
}

SnrTriple snrs_from_scenario(double gamma_d, const ScenarioScaling& scaling,
                             std::optional<double> gamma_e_fixed) {
    if (!(std::isfinite(gamma_d) && gamma_d > 0.0))
        throw ValidationError("gamma_d must be finite and > 0");
    if (scaling.beta.has_value() == gamma_e_fixed.has_value())
        throw ValidationError(
            "exactly one eavesdropper specification required: scaling.beta or gamma_e_fixed");
    if (gamma_e_fixed && !(std::isfinite(*gamma_e_fixed) && *gamma_e_fixed >= 0.0))
        throw ValidationError("gamma_e_fixed must be finite and >= 0");
    const double gamma_r = scaling.alpha * gamma_d;
    const double gamma_e = scaling.beta ? gamma_r / *scaling.beta : *gamma_e_fixed;
    return SnrTriple(gamma_r, gamma_d, gamma_e);
}

}  // namespace dfsec
