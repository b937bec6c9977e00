#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dfsec {

/// Thrown whenever an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Which wiretap-link topology is analyzed.
///
/// kCase1: the eavesdropper overhears only the relay's transmission.
/// kCase2: the eavesdropper overhears only the source's transmission.
/// kCase3: the eavesdropper overhears both hops.
/// kCase1Conventional: Case 1 evaluated with the widely used (but
/// non-rigorous) single-ratio capacity expression. Monte Carlo only.
enum class CaseId { kCase1, kCase2, kCase3, kCase1Conventional };

std::string to_string(CaseId c);
CaseId case_from_string(std::string_view s);

/// False for the conventional variant, which this library evaluates by
/// simulation only.
bool has_closed_form(CaseId c);

/// dB -> linear power ratio. Errors on non-finite input.
double db_to_linear(double x_db);

/// Linear power ratio -> dB. Requires x >= 0; returns -infinity for 0.
double linear_to_db(double x);

/// Average link SNRs in linear scale. gamma_e = 0 models the degenerate
/// no-eavesdropper system.
struct SnrTriple {
    double gamma_r;  ///< S->R link
    double gamma_d;  ///< R->D link
    double gamma_e;  ///< wiretap links

    SnrTriple(double gamma_r, double gamma_d, double gamma_e);
};

/// Target secrecy rate in bits per channel use. Must be positive.
struct RateThreshold {
    double bits;

    explicit RateThreshold(double bits);
};

/// High-SNR scenario scalings: gamma_r = alpha * gamma_d always, and
/// gamma_e = gamma_r / beta when beta is present (otherwise the
/// eavesdropper SNR is held fixed externally).
struct ScenarioScaling {
    double alpha;
    std::optional<double> beta;

    explicit ScenarioScaling(double alpha, std::optional<double> beta = std::nullopt);
};

/// SNRs from total transmit power and per-node noise powers. The power is
/// split equally between the two transmitting nodes, so gamma_j = p / (2 sigma2_j).
SnrTriple snr_from_power(double p, double sigma2_r, double sigma2_d, double sigma2_e);

/// SNRs for one point of a high-SNR scenario. Exactly one of scaling.beta
/// and gamma_e_fixed must be provided.
SnrTriple snrs_from_scenario(double gamma_d, const ScenarioScaling& scaling,
                             std::optional<double> gamma_e_fixed);

}  // namespace dfsec
