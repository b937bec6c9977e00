#include "dfsec/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dfsec {

namespace {

// All hop capacities are computed in nats and divided by ln 2 once at the
// end, so every case shares one rounding behaviour.

// log2(1 + g*x), never negative.
double plain_capacity(double snr, double gain) {
    return std::log1p(snr * gain) / std::numbers::ln2;
}

// max(log2((1 + snr_main*g_main) / (1 + snr_eve*g_eve)), 0)
double wiretap_capacity(double snr_main, double g_main, double snr_eve, double g_eve) {
    const double nats = std::log1p(snr_main * g_main) - std::log1p(snr_eve * g_eve);
    return std::max(nats / std::numbers::ln2, 0.0);
}

CapacityBreakdown combine(double hop_sr, double hop_rd) {
    return CapacityBreakdown{hop_sr, hop_rd, std::max(std::min(hop_sr, hop_rd), 0.0)};
}

}  // namespace

CapacityBreakdown capacity_case1(const ChannelDraw& draw, const SnrTriple& snrs) {
    const double hop_sr = plain_capacity(snrs.gamma_r, draw.g_sr);
    const double hop_rd = wiretap_capacity(snrs.gamma_d, draw.g_rd, snrs.gamma_e, draw.g_re);
    return combine(hop_sr, hop_rd);
}

double capacity_case1_conventional(const ChannelDraw& draw, const SnrTriple& snrs) {
    const double legit = std::min(snrs.gamma_d * draw.g_rd, snrs.gamma_r * draw.g_sr);
    const double nats = std::log1p(legit) - std::log1p(snrs.gamma_e * draw.g_re);
    return std::max(nats / std::numbers::ln2, 0.0);
}

CapacityBreakdown capacity_case2(const ChannelDraw& draw, const SnrTriple& snrs) {
    const double hop_sr = wiretap_capacity(snrs.gamma_r, draw.g_sr, snrs.gamma_e, draw.g_se);
    const double hop_rd = plain_capacity(snrs.gamma_d, draw.g_rd);
    return combine(hop_sr, hop_rd);
}

CapacityBreakdown capacity_case3(const ChannelDraw& draw, const SnrTriple& snrs) {
    const double hop_sr = wiretap_capacity(snrs.gamma_r, draw.g_sr, snrs.gamma_e, draw.g_se);
    const double hop_rd = wiretap_capacity(snrs.gamma_d, draw.g_rd, snrs.gamma_e, draw.g_re);
    return combine(hop_sr, hop_rd);
}

CapacityBreakdown capacity_for(CaseId c, const ChannelDraw& draw, const SnrTriple& snrs) {
    switch (c) {
        case CaseId::kCase1: return capacity_case1(draw, snrs);
        case CaseId::kCase2: return capacity_case2(draw, snrs);
        case CaseId::kCase3: return capacity_case3(draw, snrs);
        case CaseId::kCase1Conventional:
            throw ValidationError(
                "the conventional Case 1 expression has no per-hop breakdown; "
                "use capacity_case1_conventional");
    }
    throw ValidationError("unknown CaseId");
}

}  // namespace dfsec
