#include "gossip/policies.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gossip {

std::string_view to_string(Policy policy)
{
    switch (policy) {
    case Policy::random: return "random";
    case Policy::q: return "q";
    case Policy::qp: return "qp";
    case Policy::qu: return "qu";
    case Policy::qpu: return "qpu";
    case Policy::qup: return "qup";
    }
    return "?";
}

Policy parse_policy(std::string_view text)
{
    if (text == "random") return Policy::random;
    if (text == "q") return Policy::q;
    if (text == "qp") return Policy::qp;
    if (text == "qu") return Policy::qu;
    if (text == "qpu") return Policy::qpu;
    if (text == "qup") return Policy::qup;
    throw std::invalid_argument("unknown policy '" + std::string(text) + "'");
}

namespace {

std::vector<NodeId> front_back_interleave(const std::vector<NodeId>& sorted)
{
    std::vector<NodeId> out;
    out.reserve(sorted.size());
    std::size_t lo = 0;
    std::size_t hi = sorted.size();
    while (lo < hi) {
        out.push_back(sorted[lo++]);
        if (lo < hi)
            out.push_back(sorted[--hi]);
    }
    return out;
}

} // namespace

std::vector<NodeId> order_neighbors(std::span<const NodeId> neighbors, Policy policy,
                                    std::span<const std::size_t> out_degrees)
{
    std::vector<NodeId> list(neighbors.begin(), neighbors.end());
    auto popular_first = [&](NodeId a, NodeId b) {
        return out_degrees[a] != out_degrees[b] ? out_degrees[a] > out_degrees[b] : a < b;
    };
    auto unpopular_first = [&](NodeId a, NodeId b) {
        return out_degrees[a] != out_degrees[b] ? out_degrees[a] < out_degrees[b] : a < b;
    };
    switch (policy) {
    case Policy::random:
    case Policy::q:
        break;
    case Policy::qp:
        std::sort(list.begin(), list.end(), popular_first);
        break;
    case Policy::qu:
        std::sort(list.begin(), list.end(), unpopular_first);
        break;
    case Policy::qpu:
        std::sort(list.begin(), list.end(), popular_first);
        list = front_back_interleave(list);
        break;
    case Policy::qup:
        std::sort(list.begin(), list.end(), unpopular_first);
        list = front_back_interleave(list);
        break;
    }
    return list;
}

NeighborOrdering::NeighborOrdering(const Graph& g, Policy policy) : policy_(policy)
{
    const auto deg = g.out_degrees();
    offsets_.reserve(g.node_count() + 1);
    offsets_.push_back(0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto ordered = order_neighbors(g.out_neighbors(v), policy, deg);
        lists_.insert(lists_.end(), ordered.begin(), ordered.end());
        offsets_.push_back(lists_.size());
    }
}

PolicyState init_policy_state(NodeId node, const NeighborOrdering& ordering, std::size_t memory_size,
                              Rng& rng)
{
    if (memory_size > 0 && is_quasirandom(ordering.policy()))
        throw std::invalid_argument("neighbor memory applies only to the random policy");
    PolicyState ps;
    ps.policy = ordering.policy();
    ps.memory_size = memory_size;
    ps.contacts = ordering.contacts(node);
    if (is_quasirandom(ps.policy) && !ps.contacts.empty())
        ps.cursor = rng.below(ps.contacts.size());
    return ps;
}

void select_targets(PolicyState& ps, std::size_t f, Rng& rng, std::vector<NodeId>& out)
{
    const std::size_t d = ps.contacts.size();
    if (f < 1 || f > d)
        throw std::invalid_argument("select_targets: fan-out outside [1, out_degree]");

    if (is_quasirandom(ps.policy)) {
        for (std::size_t i = 0; i < f; ++i)
            out.push_back(ps.contacts[(ps.cursor + i) % d]);
        ps.cursor = (ps.cursor + f) % d;
        return;
    }

    const std::size_t excluded = std::min(ps.memory_size, d - f);
    const auto recent = std::span<const NodeId>(ps.memory).last(std::min(excluded, ps.memory.size()));
    const std::size_t first = out.size();
    auto taken = [&](NodeId v) {
        return std::find(recent.begin(), recent.end(), v) != recent.end()
               || std::find(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(), v) != out.end();
    };

    if (f == 1 || 4 * (f + recent.size()) <= d) {
        // Rejection keeps the draw uniform over the non-excluded neighbors.
        while (out.size() - first < f) {
            const NodeId pick = ps.contacts[rng.below(d)];
            if (!taken(pick))
                out.push_back(pick);
        }
    } else {
        std::vector<NodeId> pool;
        pool.reserve(d);
        for (NodeId v : ps.contacts)
            if (std::find(recent.begin(), recent.end(), v) == recent.end())
                pool.push_back(v);
        for (std::size_t i = 0; i < f; ++i) {
            const std::size_t j = i + rng.below(pool.size() - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
    }

    if (ps.memory_size > 0) {
        ps.memory.insert(ps.memory.end(), out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
        if (ps.memory.size() > ps.memory_size)
            ps.memory.erase(ps.memory.begin(),
                            ps.memory.begin() + static_cast<std::ptrdiff_t>(ps.memory.size() - ps.memory_size));
    }
}

} // namespace gossip
