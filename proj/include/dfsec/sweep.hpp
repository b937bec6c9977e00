#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfsec/model.hpp"

namespace dfsec {

enum class Scenario { kFixedEve, kScaledEve };

std::string to_string(Scenario s);
Scenario scenario_from_string(std::string_view s);

enum class TableFormat { kCsv, kJsonLines };

TableFormat format_from_string(std::string_view s);

/// An SNR sweep over gamma_d, reproducing the reference experiments:
/// fixed-eve holds gamma_e at gamma_e_fixed while gamma_r = alpha*gamma_d
/// grows; scaled-eve ties gamma_e = gamma_r / beta. mc_samples = 0 disables
/// the Monte Carlo column.
struct SweepSpec {
    Scenario scenario = Scenario::kFixedEve;
    std::vector<CaseId> cases;
    double gamma_d_db_start = 0.0;
    double gamma_d_db_stop = 50.0;
    double gamma_d_db_step = 2.0;
    double alpha = 0.5;
    std::optional<double> beta;           ///< scaled-eve only
    std::optional<double> gamma_e_fixed;  ///< fixed-eve only, linear scale
    double rate_bits = 1.0;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 42;
    unsigned workers = 0;

    void validate() const;
};

/// One (case, grid point) result. Missing values (disabled or skipped MC,
/// analytic columns of the conventional variant) stay unset and serialize
/// as empty CSV fields / JSON nulls.
struct SweepRow {
    CaseId case_id = CaseId::kCase1;
    double gamma_d_db = 0.0;
    double gamma_r_db = 0.0;
    double gamma_e_db = 0.0;
    double rate = 0.0;
    std::optional<double> sop_analytic;
    std::optional<double> sop_asymptotic;
    std::optional<double> sop_limit;
    std::optional<double> sop_mc;
    std::optional<double> mc_ci_low;
    std::optional<double> mc_ci_high;
    std::optional<double> excess;  ///< sop_analytic - sop_limit

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline constexpr const char* kTableHeader =
    "case,gamma_d_db,gamma_r_db,gamma_e_db,rate,sop_analytic,sop_asymptotic,sop_limit,"
    "sop_mc,mc_ci_low,mc_ci_high,excess";

/// Analytic SOP below which Monte Carlo is skipped at a grid point, unless
/// mc_samples is raised above the default of 10^6.
inline constexpr double kMcSkipThreshold = 1e-6;
inline constexpr std::uint64_t kMcDefaultSamples = 1000000;

/// Evaluates the sweep. Rows are ordered by (case, gamma_d_db). Monte Carlo
/// at one grid point shares its draws across the requested cases, so the MC
/// columns are paired on common randomness.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_table(std::span<const SweepRow> rows, std::ostream& out, TableFormat format);
void write_table(std::span<const SweepRow> rows, const std::string& path, TableFormat format);

std::vector<SweepRow> read_table(std::istream& in, TableFormat format);
std::vector<SweepRow> read_table(const std::string& path, TableFormat format);

/// Least-squares slope of log10(sop_analytic) against log10(gamma_d) over
/// the rows whose gamma_d_db lies in [window.first, window.second], negated
/// to give the secrecy diversity order estimate. The window must contain at
/// least three rows, all of one case with positive analytic SOP, from a
/// fixed-eavesdropper sweep (sop_limit = 0).
double fit_diversity_order(std::span<const SweepRow> rows, std::pair<double, double> window_db);

}  // namespace dfsec
