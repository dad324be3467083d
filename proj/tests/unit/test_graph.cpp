#include <doctest.h>

#include <set>
#include <sstream>

#include "gossip/graph.hpp"

using namespace gossip;

namespace {

std::set<std::pair<NodeLabel, NodeLabel>> arcs_by_label(const Graph& g)
{
    std::set<std::pair<NodeLabel, NodeLabel>> out;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v : g.out_neighbors(u))
            out.emplace(g.label(u), g.label(v));
    return out;
}

// Brute-force count of unordered adjacent pairs, independent of edge_count().
std::size_t count_undirected_pairs(const Graph& g)
{
    std::size_t pairs = 0;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId v = u + 1; v < g.node_count(); ++v) {
            const auto nb = g.out_neighbors(u);
            if (std::find(nb.begin(), nb.end(), v) != nb.end())
                ++pairs;
        }
    return pairs;
}

Graph star(std::size_t leaves)
{
    std::string text;
    for (std::size_t i = 1; i <= leaves; ++i)
        text += "0 " + std::to_string(i) + "\n";
    return parse_edge_list(text, GraphKind::undirected);
}

} // namespace

TEST_SUITE("graphio") {

TEST_CASE("two-edge path parses symmetric")
{
    const Graph g = parse_edge_list("1 2\n2 3\n", GraphKind::undirected);
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(arcs_by_label(g) == std::set<std::pair<NodeLabel, NodeLabel>>{{1, 2}, {2, 1}, {2, 3}, {3, 2}});
}

TEST_CASE("signed input keeps positive edges by default")
{
    const Graph g = parse_edge_list("1 2 -1\n1 3 +1\n", GraphKind::signed_);
    CHECK(g.edge_count() == 1);
    CHECK(arcs_by_label(g) == std::set<std::pair<NodeLabel, NodeLabel>>{{1, 3}});

    const Graph all = parse_edge_list("1 2 -1\n1 3 +1\n", GraphKind::signed_, SignPolicy::keep_all_as_unsigned);
    CHECK(all.edge_count() == 2);
}

TEST_CASE("directed duplicates dropped, reverse kept, comments skipped")
{
    const Graph g = parse_edge_list("1 2\n# comment\n1 2\n2 1\n% other comment\n", GraphKind::directed);
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("self-loops are dropped")
{
    const Graph g = parse_edge_list("1 1\n1 2\n", GraphKind::undirected);
    CHECK(g.edge_count() == 1);
    CHECK(g.out_degree(0) == 1);
}

TEST_CASE("malformed lines report their line number")
{
    try {
        parse_edge_list("1 2\n3 x\n", GraphKind::undirected);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_edge_list("1 2\n", GraphKind::signed_), ParseError);
    CHECK_THROWS_AS(parse_edge_list("1 2 abc\n", GraphKind::signed_), ParseError);
    CHECK_THROWS_AS(parse_edge_list("7\n", GraphKind::directed), ParseError);
}

TEST_CASE("extra numeric columns are tolerated for unsigned kinds")
{
    const Graph g = parse_edge_list("1 2 1 1199145600\n2 3 1 0.5\n", GraphKind::undirected);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("largest component picks the 4-node path over triangles")
{
    const Graph g = parse_edge_list("1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n10 11\n11 12\n12 13\n", GraphKind::undirected);
    const Graph lcc = largest_connected_component(g);
    CHECK(lcc.node_count() == 4);
    CHECK(lcc.edge_count() == 3);
    CHECK(lcc.label(0) == 10);
}

TEST_CASE("directed 3-cycle plus isolated pair")
{
    const Graph g = parse_edge_list("1 2\n2 3\n3 1\n8 9\n", GraphKind::directed);
    const Graph lcc = largest_connected_component(g);
    CHECK(lcc.node_count() == 3);
    CHECK(lcc.edge_count() == 3);
}

TEST_CASE("ties go to the component with the smallest label")
{
    const Graph g = parse_edge_list("20 21\n5 6\n", GraphKind::undirected);
    CHECK(largest_connected_component(g).label(0) == 5);
}

TEST_CASE("weak and strong components differ on a directed chain")
{
    const Graph g = parse_edge_list("1 2\n2 3\n3 1\n3 4\n4 5\n", GraphKind::directed);
    CHECK(largest_connected_component(g, ComponentMode::weak).node_count() == 5);
    CHECK(largest_connected_component(g, ComponentMode::strong).node_count() == 3);
}

TEST_CASE("largest component of an empty graph is an error")
{
    CHECK_THROWS_AS(largest_connected_component(Graph{}), std::invalid_argument);
}

TEST_CASE("group classification")
{
    SUBCASE("star: center giant, leaves singletons")
    {
        const Graph g = star(20);
        const auto groups = classify_groups(g, 0.9);
        CHECK(groups.group[0] == Group::giant);
        for (NodeId v = 1; v < g.node_count(); ++v)
            CHECK(groups.group[v] == Group::singleton);
    }
    SUBCASE("regular graph: everyone middle")
    {
        const Graph g = parse_edge_list("1 2\n2 3\n3 4\n4 1\n", GraphKind::undirected);
        const auto groups = classify_groups(g, 0.9);
        CHECK(groups.threshold_degree == 3);
        CHECK(groups.members(Group::middle).size() == 4);
    }
    SUBCASE("degree 5 below threshold is middle")
    {
        std::string text;
        // hub of degree 100 plus a node of degree 5 hanging off the hub's leaves
        for (int i = 1; i <= 100; ++i)
            text += "0 " + std::to_string(i) + "\n";
        for (int i = 1; i <= 5; ++i)
            text += "500 " + std::to_string(i) + "\n";
        const Graph g = parse_edge_list(text, GraphKind::undirected);
        const auto groups = classify_groups(g, 0.99);
        CHECK(groups.threshold_degree == 6);
        const auto labels = g.labels();
        const auto v = static_cast<NodeId>(std::find(labels.begin(), labels.end(), 500) - labels.begin());
        CHECK(g.out_degree(v) == 5);
        CHECK(groups.group[v] == Group::middle);
    }
    CHECK_THROWS_AS(classify_groups(star(3), 1.0), std::invalid_argument);
}

TEST_CASE("clustering coefficient")
{
    CHECK(graph_stats(parse_edge_list("1 2\n2 3\n3 1\n", GraphKind::undirected)).avg_local_clustering == 1.0);
    CHECK(graph_stats(parse_edge_list("1 2\n2 3\n", GraphKind::undirected)).avg_local_clustering == 0.0);
    // triangle with a pendant: nodes 1,2 -> 1, node 3 -> 1/3, node 4 -> 0
    const auto s = graph_stats(parse_edge_list("1 2\n2 3\n3 1\n3 4\n", GraphKind::undirected));
    CHECK(s.avg_local_clustering == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 4.0));
    // directed input is counted on its undirected view
    CHECK(average_local_clustering(parse_edge_list("1 2\n2 3\n1 3\n", GraphKind::directed)) == 1.0);
}

TEST_CASE("graph stats summary")
{
    const auto s = graph_stats(star(4));
    CHECK(s.nodes == 5);
    CHECK(s.edges == 4);
    CHECK(s.min_out_degree == 1);
    CHECK(s.max_out_degree == 4);
    CHECK(s.mean_out_degree == doctest::Approx(8.0 / 5.0));
    CHECK(s.degree_histogram.at(1) == 4);
    CHECK(s.degree_histogram.at(4) == 1);
}

TEST_CASE("preferential attachment")
{
    SUBCASE("n = attach + 1 is a complete graph")
    {
        Rng rng(3);
        const Graph g = generate_pa(5, 4, rng);
        CHECK(g.edge_count() == 10);
        for (NodeId v = 0; v < 5; ++v)
            CHECK(g.out_degree(v) == 4);
    }
    SUBCASE("edge count formula checked by counting")
    {
        Rng rng(11);
        const Graph g = generate_pa(1000, 2, rng);
        CHECK(count_undirected_pairs(g) == 1997);
        CHECK(g.edge_count() == 1997);
        CHECK(largest_connected_component(g).node_count() == 1000);
    }
    SUBCASE("same seed, same graph")
    {
        Rng a(42), b(42), c(43);
        const Graph ga = generate_pa(300, 3, a);
        CHECK(ga == generate_pa(300, 3, b));
        CHECK_FALSE(ga == generate_pa(300, 3, c));
    }
    Rng rng(1);
    CHECK_THROWS_AS(generate_pa(3, 3, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_pa(3, 0, rng), std::invalid_argument);
}

TEST_CASE("property: round trip, LCC idempotence, degree sum, group partition")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        const std::size_t n = 20 + rng.below(200);
        // random sparse graph with several components and random labels
        std::string text;
        const std::size_t m = n + rng.below(n);
        for (std::size_t i = 0; i < m; ++i)
            text += std::to_string(rng.below(3 * n)) + " " + std::to_string(rng.below(3 * n)) + "\n";
        for (GraphKind kind : {GraphKind::undirected, GraphKind::directed}) {
            const Graph g = parse_edge_list(text, kind);
            std::ostringstream out;
            write_edge_list(out, g);
            CHECK(parse_edge_list(out.str(), kind) == g);

            const Graph lcc = largest_connected_component(g);
            CHECK(largest_connected_component(lcc) == lcc);

            if (kind == GraphKind::undirected) {
                std::size_t sum = 0;
                for (NodeId v = 0; v < g.node_count(); ++v)
                    sum += g.out_degree(v);
                CHECK(sum == 2 * g.edge_count());
            }

            const auto groups = classify_groups(lcc, 0.9);
            std::size_t ones = 0;
            for (NodeId v = 0; v < lcc.node_count(); ++v)
                ones += lcc.out_degree(v) == 1;
            CHECK(groups.members(Group::singleton).size() == ones);
            CHECK(groups.members(Group::singleton).size() + groups.members(Group::middle).size()
                      + groups.members(Group::giant).size()
                  == lcc.node_count());
        }
    }
}

TEST_CASE("signed graphs round trip through the sign column")
{
    const Graph g = parse_edge_list("1 2 1\n2 3 -1\n3 1 1\n", GraphKind::signed_);
    std::ostringstream out;
    write_edge_list(out, g);
    CHECK(parse_edge_list(out.str(), GraphKind::signed_) == g);
}

} // TEST_SUITE
