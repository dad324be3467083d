#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/rng.hpp"

namespace gossip {

/// Neighbor selection. Random draws uniformly (optionally avoiding the last m
/// contacts); the q* variants cycle through a fixed ordering of the list.
enum class Policy { random, q, qp, qu, qpu, qup };

std::string_view to_string(Policy policy);
Policy parse_policy(std::string_view text);
constexpr bool is_quasirandom(Policy p) noexcept { return p != Policy::random; }

/// Orders a neighbor list for a quasirandom policy. Popularity is out-degree;
/// ties go to the smaller node id. qpu/qup alternate front and back of the
/// popularity-descending/ascending order.
std::vector<NodeId> order_neighbors(std::span<const NodeId> neighbors, Policy policy,
                                    std::span<const std::size_t> out_degrees);

/// Per-node contact lists for one (graph, policy) pair, computed once and
/// shared by every replication on that graph.
class NeighborOrdering {
public:
    NeighborOrdering(const Graph& g, Policy policy);

    Policy policy() const noexcept { return policy_; }
    std::span<const NodeId> contacts(NodeId v) const
    {
        return {lists_.data() + offsets_[v], lists_.data() + offsets_[v + 1]};
    }

private:
    Policy policy_;
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> lists_;
};

struct PolicyState {
    Policy policy = Policy::random;
    std::size_t memory_size = 0;
    std::vector<NodeId> memory;        // oldest first
    std::span<const NodeId> contacts;  // ordered list for q*, out-neighbors for random
    std::size_t cursor = 0;
};

/// Throws std::invalid_argument when memory is requested for a quasirandom
/// policy (they already avoid repeats for a full cycle).
PolicyState init_policy_state(NodeId node, const NeighborOrdering& ordering, std::size_t memory_size,
                              Rng& rng);

/// Appends exactly `f` distinct contacts to `out`; requires 1 <= f <= |contacts|.
void select_targets(PolicyState& ps, std::size_t f, Rng& rng, std::vector<NodeId>& out);

} // namespace gossip
