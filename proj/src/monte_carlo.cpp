#include "dfsec/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dfsec/sampler.hpp"

namespace dfsec {

namespace {

constexpr std::uint64_t kBatchSize = std::uint64_t{1} << 16;

std::size_t variant_index(CaseId c) { return static_cast<std::size_t>(c); }

unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Outage indicators come from threshold comparisons instead of capacity
// evaluations: capacity < r iff the legitimate SNR factor falls below
// 2^r times the eavesdropper factor, which needs no logarithms. With
// a = 1 + gamma_r g_sr, b = 1 + gamma_d g_rd, c = 1 + gamma_e g_se,
// d = 1 + gamma_e g_re and t = 2^r:
//   case 1:       a < t        or  b < t d
//   case 2:       a < t c      or  b < t
//   case 3:       a < t c      or  b < t d
//   conventional: min(a, b) < t d
void accumulate_range(const SnrTriple& snrs, std::span<const double> thresholds,
                      std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> counts) {
    const std::size_t nr = thresholds.size();
    for (std::uint64_t k = begin; k < end; ++k) {
        const SampleStream stream{seed, k / kBatchSize};
        const ChannelDraw g = sample_draw(stream, k % kBatchSize);
        const double a = 1.0 + snrs.gamma_r * g.g_sr;
        const double b = 1.0 + snrs.gamma_d * g.g_rd;
        const double c = 1.0 + snrs.gamma_e * g.g_se;
        const double d = 1.0 + snrs.gamma_e * g.g_re;
        const double legit_conv = std::min(a, b);
        for (std::size_t j = 0; j < nr; ++j) {
            const double t = thresholds[j];
            const bool sr_tapped = a < t * c;
            const bool rd_tapped = b < t * d;
            counts[0 * nr + j] += (a < t) || rd_tapped;
            counts[1 * nr + j] += sr_tapped || (b < t);
            counts[2 * nr + j] += sr_tapped || rd_tapped;
            counts[3 * nr + j] += legit_conv < t * d;
        }
    }
}

// Counts over the sample index range [begin, end), split contiguously
// across workers. The totals are integer sums, so the partition cannot
// affect the result.
std::vector<std::uint64_t> count_range(const SnrTriple& snrs, std::span<const double> thresholds,
                                       std::uint64_t seed, std::uint64_t begin, std::uint64_t end,
                                       unsigned workers) {
    const std::size_t nr = thresholds.size();
    const std::uint64_t span = end - begin;
    const unsigned nw = static_cast<unsigned>(std::min<std::uint64_t>(resolve_workers(workers),
                                                                      std::max<std::uint64_t>(span, 1)));
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(nw) * 4 * nr, 0);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
        const std::uint64_t lo = begin + span * w / nw;
        const std::uint64_t hi = begin + span * (w + 1) / nw;
        std::span<std::uint64_t> slice(partial.data() + static_cast<std::size_t>(w) * 4 * nr,
                                       4 * nr);
        pool.emplace_back(accumulate_range, std::cref(snrs), thresholds, seed, lo, hi, slice);
    }
    for (auto& t : pool) t.join();

    std::vector<std::uint64_t> totals(4 * nr, 0);
    for (unsigned w = 0; w < nw; ++w) {
        for (std::size_t i = 0; i < 4 * nr; ++i) {
            totals[i] += partial[static_cast<std::size_t>(w) * 4 * nr + i];
        }
    }
    return totals;
}

std::vector<double> thresholds_from_rates(std::span<const double> rates_bits) {
    std::vector<double> thresholds(rates_bits.size());
    for (std::size_t j = 0; j < rates_bits.size(); ++j) {
        thresholds[j] = std::exp2(RateThreshold(rates_bits[j]).bits);
    }
    return thresholds;
}

SopEstimate estimate_from_count(CaseId c, std::uint64_t outages, std::uint64_t n,
                                std::uint64_t seed) {
    const Interval ci = wilson_interval(outages, n);
    return SopEstimate{static_cast<double>(outages) / static_cast<double>(n),
                       n,
                       ci.low,
                       ci.high,
                       seed,
                       c,
                       true};
}

}  // namespace

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z) {
    if (n == 0) throw ValidationError("Wilson interval needs n >= 1");
    if (successes > n) throw ValidationError("successes must not exceed n");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2n = z * z / nn;
    const double center = (p + z2n / 2.0) / (1.0 + z2n);
    const double half =
        z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
    return Interval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::uint64_t OutageCounts::at(CaseId c, std::size_t rate_index) const {
    return counts[variant_index(c)].at(rate_index);
}

OutageCounts count_outages(const SnrTriple& snrs, std::span<const double> rates_bits,
                           std::uint64_t n, std::uint64_t seed, unsigned workers) {
    if (n == 0) throw ValidationError("sample count must be >= 1");
    if (rates_bits.empty()) throw ValidationError("at least one rate threshold required");
    const std::vector<double> thresholds = thresholds_from_rates(rates_bits);
    const std::vector<std::uint64_t> totals =
        count_range(snrs, thresholds, seed, 0, n, workers);

    OutageCounts out;
    out.n = n;
    out.rates.assign(rates_bits.begin(), rates_bits.end());
    const std::size_t nr = thresholds.size();
    for (std::size_t v = 0; v < 4; ++v) {
        out.counts[v].assign(totals.begin() + static_cast<std::ptrdiff_t>(v * nr),
                             totals.begin() + static_cast<std::ptrdiff_t>((v + 1) * nr));
    }
    return out;
}

SopEstimate estimate_sop(CaseId c, const SnrTriple& snrs, RateThreshold r, std::uint64_t n,
                         std::uint64_t seed, unsigned workers) {
    const double rates[1] = {r.bits};
    const OutageCounts counts = count_outages(snrs, rates, n, seed, workers);
    return estimate_from_count(c, counts.at(c, 0), n, seed);
}

SopEstimate estimate_sop_adaptive(CaseId c, const SnrTriple& snrs, RateThreshold r,
                                  double target_rel_halfwidth, std::uint64_t max_n,
                                  std::uint64_t seed, unsigned workers) {
    if (!(std::isfinite(target_rel_halfwidth) && target_rel_halfwidth > 0.0 &&
          target_rel_halfwidth < 1.0))
        throw ValidationError("target relative half-width must be in (0, 1)");
    if (max_n == 0) throw ValidationError("max_n must be >= 1");

    const double rates[1] = {r.bits};
    const std::vector<double> thresholds = thresholds_from_rates(rates);
    const std::size_t v = variant_index(c);
    std::uint64_t outages = 0;
    std::uint64_t n = 0;
    while (true) {
        // Deterministic doubling batches. Sample identities are fixed by
        // (seed, index), so the cumulative count after reaching n equals a
        // fixed-size run of n samples.
        const std::uint64_t next = std::min(max_n, n == 0 ? kBatchSize : n * 2);
        outages += count_range(snrs, thresholds, seed, n, next, workers)[v];
        n = next;

        SopEstimate est = estimate_from_count(c, outages, n, seed);
        const double halfwidth = (est.ci_high - est.ci_low) / 2.0;
        if (est.value > 0.0 && halfwidth <= target_rel_halfwidth * est.value) return est;
        if (n >= max_n) {
            est.target_met = false;
            return est;
        }
    }
}

}  // namespace dfsec
