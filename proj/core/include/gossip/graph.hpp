#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gossip/rng.hpp"

namespace gossip {

using NodeId = std::uint32_t;
using NodeLabel = std::int64_t;

enum class GraphKind { undirected, directed, signed_ };
enum class SignPolicy { keep_positive_only, keep_all_as_unsigned };
enum class ComponentMode { weak, strong };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view text);
std::string_view to_string(SignPolicy policy);
SignPolicy parse_sign_policy(std::string_view text);
ComponentMode parse_component_mode(std::string_view text);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Immutable out-adjacency in compressed form. Dense ids are assigned in
/// ascending order of the original dataset labels and every neighbor list is
/// sorted ascending, so two graphs with the same edge set compare equal.
class Graph {
public:
    Graph() = default;

    /// Builds from arcs over dense ids [0, labels.size()). Self-loops and
    /// duplicates are dropped; undirected input is symmetrized.
    static Graph from_arcs(GraphKind kind, std::vector<NodeLabel> labels,
                           std::vector<std::pair<NodeId, NodeId>> arcs);

    std::size_t node_count() const noexcept { return labels_.size(); }
    /// Unordered pairs for undirected graphs, ordered pairs otherwise.
    std::size_t edge_count() const noexcept { return edge_count_; }
    GraphKind kind() const noexcept { return kind_; }
    bool is_undirected() const noexcept { return kind_ == GraphKind::undirected; }

    std::span<const NodeId> out_neighbors(NodeId v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t out_degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::vector<std::size_t> out_degrees() const;

    NodeLabel label(NodeId v) const { return labels_[v]; }
    std::span<const NodeLabel> labels() const noexcept { return labels_; }

    bool operator==(const Graph&) const = default;

private:
    GraphKind kind_ = GraphKind::undirected;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<NodeLabel> labels_;
};

/// Parses a whitespace-separated edge list. Lines starting with '#' or '%'
/// are comments. Signed input needs a third token; positive means > 0.
Graph parse_edge_list(std::istream& in, GraphKind kind,
                      SignPolicy sign_policy = SignPolicy::keep_positive_only);
Graph parse_edge_list(std::string_view text, GraphKind kind,
                      SignPolicy sign_policy = SignPolicy::keep_positive_only);
Graph load_edge_list(const std::string& path, GraphKind kind,
                     SignPolicy sign_policy = SignPolicy::keep_positive_only);

/// Writes the graph with its original labels. Undirected edges appear once.
/// Signed graphs are written with a "+1" sign column.
void write_edge_list(std::ostream& out, const Graph& g);

/// Induced subgraph on the largest component, reindexed densely. Ties go to
/// the component containing the smallest original label.
Graph largest_connected_component(const Graph& g, ComponentMode mode = ComponentMode::weak);

enum class Group : std::uint8_t { singleton = 1, middle = 2, giant = 3 };

std::string_view to_string(Group group);
Group parse_group(std::string_view text);

struct GroupAssignment {
    std::vector<Group> group;
    std::size_t threshold_degree = 0;

    std::vector<NodeId> members(Group g) const;
};

inline constexpr double default_group_percentile = 0.90;

/// Singleton = out-degree 1; giant = out-degree >= t where t is the smallest
/// degree whose upper tail holds at most (1 - percentile) of the nodes.
GroupAssignment classify_groups(const Graph& g, double percentile = default_group_percentile);

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t min_out_degree = 0;
    std::size_t max_out_degree = 0;
    double mean_out_degree = 0.0;
    std::map<std::size_t, std::size_t> degree_histogram;
    double avg_local_clustering = 0.0;
};

GraphStats graph_stats(const Graph& g);

/// Mean local clustering coefficient over all nodes on the undirected view;
/// nodes with fewer than two neighbors contribute zero.
double average_local_clustering(const Graph& g);

/// Preferential attachment: a clique on attach+1 nodes, then each new node
/// links to `attach` distinct existing nodes chosen proportionally to degree.
Graph generate_pa(std::size_t n, std::size_t attach, Rng& rng);

} // namespace gossip
