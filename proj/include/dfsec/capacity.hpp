#pragma once

#include "dfsec/model.hpp"
#include "dfsec/sampler.hpp"

namespace dfsec {

/// Per-hop and end-to-end instantaneous secrecy capacity, bits per channel
/// use. The hop fields hold the per-hop secrecy capacity (wiretapped hops
/// are already clamped at zero) or the plain channel capacity for a hop the
/// eavesdropper cannot hear. Always end_to_end = max(min(hop_sr, hop_rd), 0).
struct CapacityBreakdown {
    double hop_sr;
    double hop_rd;
    double end_to_end;
};

/// Case 1: eavesdropper hears the relay only. The S->R hop carries plain
/// channel capacity; the R->D hop is a clamped capacity ratio.
CapacityBreakdown capacity_case1(const ChannelDraw& draw, const SnrTriple& snrs);

/// The conventional single-ratio expression for Case 1. Dominated pointwise
/// by capacity_case1(...).end_to_end on every draw.
double capacity_case1_conventional(const ChannelDraw& draw, const SnrTriple& snrs);

/// Case 2: eavesdropper hears the source only.
CapacityBreakdown capacity_case2(const ChannelDraw& draw, const SnrTriple& snrs);

/// Case 3: eavesdropper hears both hops; each hop runs its own secrecy code.
CapacityBreakdown capacity_case3(const ChannelDraw& draw, const SnrTriple& snrs);

/// Dispatch over the three rigorous cases. kCase1Conventional is rejected
/// (it has no per-hop breakdown); use capacity_case1_conventional directly.
CapacityBreakdown capacity_for(CaseId c, const ChannelDraw& draw, const SnrTriple& snrs);

}  // namespace dfsec
