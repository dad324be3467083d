#pragma once

#include <cstddef>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/rng.hpp"

namespace gossip {

/// Access-link parameter ranges of the star network model.
struct LinkRanges {
    double lat_min_s = 0.010;
    double lat_max_s = 0.100;
    double bw_min_bps = 3e6;
    double bw_max_bps = 50e6;

    void validate() const;
};

/// Per-node access link: latency in seconds, bandwidth in bits/second.
struct LinkTable {
    std::vector<double> latency;
    std::vector<double> bandwidth;

    std::size_t size() const noexcept { return latency.size(); }
    bool operator==(const LinkTable&) const = default;
};

struct MessageSize {
    static constexpr std::size_t header_bytes = 20;
    static constexpr std::size_t rumour_bytes = 8;

    std::size_t payload_bytes = 0;

    static constexpr MessageSize empty() { return {0}; }
    static constexpr MessageSize with_rumour() { return {rumour_bytes}; }
    constexpr std::size_t total_bits() const { return 8 * (header_bytes + payload_bytes); }
};

LinkTable assign_links(std::size_t n, Rng& rng, const LinkRanges& ranges = {});

/// Both access latencies plus one serialization at the slower access link.
/// The core of the star has unlimited capacity and no queuing.
inline double message_delay(const LinkTable& links, NodeId src, NodeId dst, MessageSize size)
{
    const double bw = links.bandwidth[src] < links.bandwidth[dst] ? links.bandwidth[src] : links.bandwidth[dst];
    return links.latency[src] + links.latency[dst] + static_cast<double>(size.total_bits()) / bw;
}

} // namespace gossip
