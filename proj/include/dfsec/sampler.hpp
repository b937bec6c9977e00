#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace dfsec {

/// One realization of the four squared channel-gain magnitudes. Each field
/// is a unit-mean exponential draw (the squared magnitude of a circularly
/// symmetric complex Gaussian gain of unit variance).
struct ChannelDraw {
    double g_sr;  ///< |h_SR|^2
    double g_rd;  ///< |h_RD|^2
    double g_se;  ///< |h_SE|^2
    double g_re;  ///< |h_RE|^2
};

/// Identifies one deterministic substream. The value sequence of a stream
/// is a pure function of (seed, stream_index); distinct stream indices give
/// statistically independent substreams, so workers can be handed disjoint
/// streams with no shared generator state.
struct SampleStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_index = 0;
};

namespace philox {

// Philox-4x32, 10 rounds. Counter-based: every 128-bit output block is a
// pure function of (counter, key), so any position is randomly accessible.
using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline Counter round_once(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return Counter{hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Counter block(Counter c, Key k) {
    c = round_once(c, k);
    for (int r = 1; r < 10; ++r) {
        k[0] += kWeyl0;
        k[1] += kWeyl1;
        c = round_once(c, k);
    }
    return c;
}

/// Block `index` of the given stream: counter words carry the block index
/// and the stream index, the key carries the seed.
inline Counter stream_block(const SampleStream& s, std::uint64_t index) {
    const Counter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(s.stream_index),
                      static_cast<std::uint32_t>(s.stream_index >> 32)};
    const Key key{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32)};
    return block(ctr, key);
}

}  // namespace philox

/// Uniform variate in [0, 1) at the given scalar position. Two 32-bit
/// Philox words form the 53-bit mantissa; one block yields two uniforms.
inline double sample_uniform(const SampleStream& s, std::uint64_t position) {
    const philox::Counter out = philox::stream_block(s, position >> 1);
    const unsigned base = 2u * static_cast<unsigned>(position & 1u);
    const std::uint64_t bits =
        (static_cast<std::uint64_t>(out[base + 1]) << 32) | out[base];
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Unit-mean exponential variate at the given scalar position, by inversion
/// of the exponential CDF.
inline double sample_exponential_unit(const SampleStream& s, std::uint64_t position) {
    return -std::log1p(-sample_uniform(s, position));
}

/// Channel draw `position` of the stream: four mutually independent
/// unit-mean exponentials at scalar positions 4p .. 4p+3.
inline ChannelDraw sample_draw(const SampleStream& s, std::uint64_t position) {
    const std::uint64_t b = position * 2;
    const philox::Counter o0 = philox::stream_block(s, b);
    const philox::Counter o1 = philox::stream_block(s, b + 1);
    const auto to_exp = [](std::uint32_t lo, std::uint32_t hi) {
        const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
        return -std::log1p(-(static_cast<double>(bits >> 11) * 0x1.0p-53));
    };
    return ChannelDraw{to_exp(o0[0], o0[1]), to_exp(o0[2], o0[3]), to_exp(o1[0], o1[1]),
                       to_exp(o1[2], o1[3])};
}

}  // namespace dfsec
