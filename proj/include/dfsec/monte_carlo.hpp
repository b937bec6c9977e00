#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dfsec/model.hpp"

namespace dfsec {

/// Two-sided 95% score interval half-quantile.
inline constexpr double kZ95 = 1.9599639845400543;

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for a binomial proportion. Well defined for zero
/// and full counts, unlike the normal approximation.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z = kZ95);

/// Monte Carlo secrecy outage probability estimate.
struct SopEstimate {
    double value;        ///< fraction of draws with capacity < rate
    std::uint64_t n;     ///< sample count
    double ci_low;       ///< two-sided 95% Wilson interval
    double ci_high;
    std::uint64_t seed;
    CaseId case_id;
    bool target_met;     ///< false only when an adaptive run hit max_n first
};

/// Outage counts for all four capacity variants at each requested rate,
/// accumulated over n common channel draws. counts[v][k] is the number of
/// draws whose variant-v capacity fell below rates[k], with v indexing
/// CaseId order (case 1, case 2, case 3, conventional case 1). Sharing the
/// draws across variants and rates gives paired comparisons on common
/// randomness.
struct OutageCounts {
    std::uint64_t n = 0;
    std::vector<double> rates;
    std::vector<std::uint64_t> counts[4];

    std::uint64_t at(CaseId c, std::size_t rate_index) const;
};

/// Counts outage events over draws 0..n-1 of the given seed. Sample k is
/// always drawn from substream k / 2^16 at offset k mod 2^16, so the result
/// is a pure function of (snrs, rates, n, seed) no matter how many workers
/// share the range. workers = 0 picks the hardware concurrency.
OutageCounts count_outages(const SnrTriple& snrs, std::span<const double> rates_bits,
                           std::uint64_t n, std::uint64_t seed, unsigned workers = 0);

/// Fixed-size SOP estimate for one case: the fraction of n draws whose
/// end-to-end secrecy capacity falls strictly below r.
SopEstimate estimate_sop(CaseId c, const SnrTriple& snrs, RateThreshold r, std::uint64_t n,
                         std::uint64_t seed, unsigned workers = 0);

/// Grows the sample count in deterministic doubling batches (first batch
/// 2^16 samples) until the 95% CI half-width is at most
/// target_rel_halfwidth * value, or max_n samples have been spent. The
/// result for a given final n is identical to a fixed-size run of that n.
SopEstimate estimate_sop_adaptive(CaseId c, const SnrTriple& snrs, RateThreshold r,
                                  double target_rel_halfwidth, std::uint64_t max_n,
                                  std::uint64_t seed, unsigned workers = 0);

}  // namespace dfsec
