#include "gossip/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gossip {

std::string_view to_string(GraphKind kind)
{
    switch (kind) {
    case GraphKind::undirected: return "undirected";
    case GraphKind::directed: return "directed";
    case GraphKind::signed_: return "signed";
    }
    return "?";
}

GraphKind parse_graph_kind(std::string_view text)
{
    if (text == "undirected") return GraphKind::undirected;
    if (text == "directed") return GraphKind::directed;
    if (text == "signed") return GraphKind::signed_;
    throw std::invalid_argument("unknown graph kind '" + std::string(text) + "'");
}

std::string_view to_string(SignPolicy policy)
{
    return policy == SignPolicy::keep_positive_only ? "positive" : "all";
}

SignPolicy parse_sign_policy(std::string_view text)
{
    if (text == "positive" || text == "keep_positive_only") return SignPolicy::keep_positive_only;
    if (text == "all" || text == "keep_all_as_unsigned") return SignPolicy::keep_all_as_unsigned;
    throw std::invalid_argument("unknown sign policy '" + std::string(text) + "'");
}

ComponentMode parse_component_mode(std::string_view text)
{
    if (text == "weak") return ComponentMode::weak;
    if (text == "strong") return ComponentMode::strong;
    throw std::invalid_argument("unknown component mode '" + std::string(text) + "'");
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

Graph Graph::from_arcs(GraphKind kind, std::vector<NodeLabel> labels,
                       std::vector<std::pair<NodeId, NodeId>> arcs)
{
    const std::size_t n = labels.size();
    if (kind == GraphKind::undirected) {
        const std::size_t m = arcs.size();
        arcs.reserve(2 * m);
        for (std::size_t i = 0; i < m; ++i)
            arcs.emplace_back(arcs[i].second, arcs[i].first);
    }
    std::erase_if(arcs, [](const auto& a) { return a.first == a.second; });
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.kind_ = kind;
    g.labels_ = std::move(labels);
    g.offsets_.assign(n + 1, 0);
    g.targets_.reserve(arcs.size());
    for (const auto& [u, v] : arcs) {
        if (u >= n || v >= n)
            throw std::out_of_range("arc endpoint outside node range");
        ++g.offsets_[u + 1];
        g.targets_.push_back(v);
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.edge_count_ = kind == GraphKind::undirected ? arcs.size() / 2 : arcs.size();
    return g;
}

std::vector<std::size_t> Graph::out_degrees() const
{
    std::vector<std::size_t> deg(node_count());
    for (NodeId v = 0; v < node_count(); ++v)
        deg[v] = out_degree(v);
    return deg;
}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out)
{
    if (!tok.empty() && tok.front() == '+')
        tok.remove_prefix(1);
    if (tok.empty())
        return false;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool is_number(std::string_view tok)
{
    if (!tok.empty() && tok.front() == '+')
        tok.remove_prefix(1);
    if (tok.empty())
        return false;
    double d = 0;
    const auto* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, d);
    return ec == std::errc{} && ptr == end;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == '\r' || line[i] == ','))
            ++i;
        if (i > start)
            out.push_back(line.substr(start, i - start));
    }
    return out;
}

} // namespace

Graph parse_edge_list(std::istream& in, GraphKind kind, SignPolicy sign_policy)
{
    std::vector<std::pair<NodeLabel, NodeLabel>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%')
            continue;
        if (tokens.size() < 2)
            throw ParseError(lineno, "expected 'src dst'");
        std::int64_t src = 0;
        std::int64_t dst = 0;
        if (!parse_int(tokens[0], src) || !parse_int(tokens[1], dst))
            throw ParseError(lineno, "non-integer node id");
        bool keep = true;
        if (kind == GraphKind::signed_) {
            std::int64_t sign = 0;
            if (tokens.size() < 3)
                throw ParseError(lineno, "signed edge lacks a sign token");
            if (!parse_int(tokens[2], sign))
                throw ParseError(lineno, "non-integer sign token");
            keep = sign_policy == SignPolicy::keep_all_as_unsigned || sign > 0;
        }
        for (std::size_t t = kind == GraphKind::signed_ ? 3 : 2; t < tokens.size(); ++t) {
            if (!is_number(tokens[t]))
                throw ParseError(lineno, "non-numeric token '" + std::string(tokens[t]) + "'");
        }
        if (keep && src != dst)
            raw.emplace_back(src, dst);
    }

    std::vector<NodeLabel> labels;
    labels.reserve(raw.size() * 2);
    for (const auto& [s, d] : raw) {
        labels.push_back(s);
        labels.push_back(d);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    auto dense = [&](NodeLabel l) {
        return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
    };
    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(raw.size());
    for (const auto& [s, d] : raw)
        arcs.emplace_back(dense(s), dense(d));
    return Graph::from_arcs(kind, std::move(labels), std::move(arcs));
}

Graph parse_edge_list(std::string_view text, GraphKind kind, SignPolicy sign_policy)
{
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, kind, sign_policy);
}

Graph load_edge_list(const std::string& path, GraphKind kind, SignPolicy sign_policy)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return parse_edge_list(in, kind, sign_policy);
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.out_neighbors(u)) {
            if (g.is_undirected() && v < u)
                continue;
            out << g.label(u) << ' ' << g.label(v);
            if (g.kind() == GraphKind::signed_)
                out << " +1";
            out << '\n';
        }
    }
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

std::vector<std::size_t> weak_components(const Graph& g)
{
    DisjointSets sets(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.out_neighbors(u))
            sets.unite(u, v);
    std::vector<std::size_t> comp(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v)
        comp[v] = sets.find(v);
    return comp;
}

// Iterative Tarjan.
std::vector<std::size_t> strong_components(const Graph& g)
{
    const std::size_t n = g.node_count();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
    std::vector<NodeId> stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::pair<NodeId, std::size_t>> call;
    std::size_t next_index = 0;
    std::size_t next_comp = 0;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != unvisited)
            continue;
        call.emplace_back(root, 0);
        while (!call.empty()) {
            auto& [v, edge] = call.back();
            if (edge == 0 && index[v] == unvisited) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            const auto nbrs = g.out_neighbors(v);
            if (edge < nbrs.size()) {
                const NodeId w = nbrs[edge++];
                if (index[w] == unvisited) {
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
            const NodeId finished = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[finished]);
        }
    }
    return comp;
}

} // namespace

Graph largest_connected_component(const Graph& g, ComponentMode mode)
{
    if (g.node_count() == 0)
        throw std::invalid_argument("largest_connected_component: empty graph");

    const auto comp = mode == ComponentMode::weak || g.is_undirected() ? weak_components(g)
                                                                       : strong_components(g);
    std::map<std::size_t, std::pair<std::size_t, NodeId>> info; // comp -> (size, min node)
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto [it, inserted] = info.try_emplace(comp[v], 0, v);
        ++it->second.first;
    }
    std::size_t best = info.begin()->first;
    for (const auto& [c, si] : info) {
        const auto& cur = info[best];
        if (si.first > cur.first || (si.first == cur.first && si.second < cur.second))
            best = c;
    }

    std::vector<NodeId> remap(g.node_count(), static_cast<NodeId>(-1));
    std::vector<NodeLabel> labels;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (comp[v] == best) {
            remap[v] = static_cast<NodeId>(labels.size());
            labels.push_back(g.label(v));
        }
    }
    std::vector<std::pair<NodeId, NodeId>> arcs;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (comp[u] != best)
            continue;
        for (NodeId v : g.out_neighbors(u))
            if (comp[v] == best)
                arcs.emplace_back(remap[u], remap[v]);
    }
    return Graph::from_arcs(g.kind(), std::move(labels), std::move(arcs));
}

std::string_view to_string(Group group)
{
    switch (group) {
    case Group::singleton: return "g1";
    case Group::middle: return "g2";
    case Group::giant: return "g3";
    }
    return "?";
}

Group parse_group(std::string_view text)
{
    if (text == "g1" || text == "1") return Group::singleton;
    if (text == "g2" || text == "2") return Group::middle;
    if (text == "g3" || text == "3") return Group::giant;
    throw std::invalid_argument("unknown group '" + std::string(text) + "'");
}

std::vector<NodeId> GroupAssignment::members(Group g) const
{
    std::vector<NodeId> out;
    for (NodeId v = 0; v < group.size(); ++v)
        if (group[v] == g)
            out.push_back(v);
    return out;
}

GroupAssignment classify_groups(const Graph& g, double percentile)
{
    if (!(percentile > 0.0 && percentile < 1.0))
        throw std::invalid_argument("classify_groups: percentile must lie in (0, 1)");
    const std::size_t n = g.node_count();
    const auto deg = g.out_degrees();
    const std::size_t max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());

    // at_least[d] = number of nodes with degree >= d
    std::vector<std::size_t> at_least(max_deg + 2, 0);
    for (std::size_t d : deg)
        ++at_least[d];
    for (std::size_t d = max_deg; d-- > 0;)
        at_least[d] += at_least[d + 1];

    const double allowed = (1.0 - percentile) * static_cast<double>(n) + 1e-9;
    std::size_t t = 0;
    while (static_cast<double>(at_least[t]) > allowed)
        ++t;

    GroupAssignment out;
    out.threshold_degree = t;
    out.group.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        if (deg[v] == 1)
            out.group[v] = Group::singleton;
        else if (deg[v] >= t)
            out.group[v] = Group::giant;
        else
            out.group[v] = Group::middle;
    }
    return out;
}

double average_local_clustering(const Graph& g)
{
    const std::size_t n = g.node_count();
    if (n == 0)
        return 0.0;
    Graph sym;
    const Graph* view = &g;
    if (!g.is_undirected()) {
        std::vector<std::pair<NodeId, NodeId>> arcs;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v : g.out_neighbors(u))
                arcs.emplace_back(u, v);
        sym = Graph::from_arcs(GraphKind::undirected, {g.labels().begin(), g.labels().end()}, std::move(arcs));
        view = &sym;
    }

    std::vector<NodeId> mark(n, static_cast<NodeId>(-1));
    double total = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const auto nbrs = view->out_neighbors(v);
        const std::size_t k = nbrs.size();
        if (k < 2)
            continue;
        for (NodeId u : nbrs)
            mark[u] = v;
        std::size_t links = 0;
        for (NodeId u : nbrs)
            for (NodeId w : view->out_neighbors(u))
                if (w > u && mark[w] == v)
                    ++links;
        total += static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
    }
    return total / static_cast<double>(n);
}

GraphStats graph_stats(const Graph& g)
{
    GraphStats s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();
    if (s.nodes == 0)
        return s;
    const auto deg = g.out_degrees();
    s.min_out_degree = *std::min_element(deg.begin(), deg.end());
    s.max_out_degree = *std::max_element(deg.begin(), deg.end());
    s.mean_out_degree = static_cast<double>(std::accumulate(deg.begin(), deg.end(), std::size_t{0}))
                        / static_cast<double>(s.nodes);
    for (std::size_t d : deg)
        ++s.degree_histogram[d];
    s.avg_local_clustering = average_local_clustering(g);
    return s;
}

Graph generate_pa(std::size_t n, std::size_t attach, Rng& rng)
{
    if (attach < 1 || n <= attach)
        throw std::invalid_argument("generate_pa: requires n > attach >= 1");

    std::vector<std::pair<NodeId, NodeId>> arcs;
    std::vector<NodeId> endpoints; // each node repeated once per incident edge
    const std::size_t seed_nodes = attach + 1;
    for (NodeId u = 0; u < seed_nodes; ++u) {
        for (NodeId v = u + 1; v < seed_nodes; ++v) {
            arcs.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::vector<NodeId> chosen;
    for (auto v = static_cast<NodeId>(seed_nodes); v < n; ++v) {
        chosen.clear();
        while (chosen.size() < attach) {
            const NodeId pick = endpoints[rng.below(endpoints.size())];
            if (std::find(chosen.begin(), chosen.end(), pick) == chosen.end())
                chosen.push_back(pick);
        }
        for (NodeId u : chosen) {
            arcs.emplace_back(v, u);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    }
    std::vector<NodeLabel> labels(n);
    std::iota(labels.begin(), labels.end(), NodeLabel{0});
    return Graph::from_arcs(GraphKind::undirected, std::move(labels), std::move(arcs));
}

} // namespace gossip
