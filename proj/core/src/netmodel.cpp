#include "gossip/netmodel.hpp"

#include <stdexcept>

namespace gossip {

void LinkRanges::validate() const
{
    if (!(lat_min_s >= 0.0 && lat_min_s <= lat_max_s))
        throw std::invalid_argument("link latency range must satisfy 0 <= min <= max");
    if (!(bw_min_bps > 0.0 && bw_min_bps <= bw_max_bps))
        throw std::invalid_argument("link bandwidth range must satisfy 0 < min <= max");
}

LinkTable assign_links(std::size_t n, Rng& rng, const LinkRanges& ranges)
{
    ranges.validate();
    LinkTable links;
    links.latency.resize(n);
    links.bandwidth.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        links.latency[v] = rng.uniform(ranges.lat_min_s, ranges.lat_max_s);
        links.bandwidth[v] = rng.uniform(ranges.bw_min_bps, ranges.bw_max_bps);
    }
    return links;
}

} // namespace gossip
