#include <doctest.h>

#include "gossip/protocol.hpp"

using namespace gossip;

namespace {

struct Fixture {
    Graph graph = parse_edge_list("0 1\n0 2\n0 3\n1 2\n", GraphKind::undirected);
    NeighborOrdering ordering{graph, Policy::random};
    StoppingConfig stop_cfg;
    FanoutConfig fanout;
    std::optional<StoppingRule> rule;
    Rng rng{7};

    explicit Fixture(Criterion c = Criterion::none)
    {
        stop_cfg.criterion = c;
        rule.emplace(stop_cfg, graph.node_count());
    }

    ProtocolContext ctx(RemovedReplies rr = RemovedReplies::empty) const
    {
        return {graph, *rule, fanout, nullptr, rr};
    }

    NodeRuntime node(NodeId v, NodeState s)
    {
        NodeRuntime r;
        r.state = s;
        r.policy = init_policy_state(v, ordering, 0, rng);
        return r;
    }
};

ProtocolMessage push_from(NodeId src, NodeId dst)
{
    return {MessageKind::push, src, dst, true, std::nullopt};
}

} // namespace

TEST_SUITE("protocol") {

TEST_CASE("timer: informed node pushes, uninformed node pulls")
{
    Fixture fx;
    std::vector<ProtocolMessage> out;

    auto informed = fx.node(0, NodeState::informed);
    auto t = on_timer(0, informed, fx.ctx(), fx.rng, out);
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::push);
    CHECK(out[0].carries_rumour);
    CHECK(out[0].src == 0);
    CHECK(t.initiated == 1);
    CHECK(t.reschedule);
    CHECK(informed.tick_count == 1);

    out.clear();
    auto uninformed = fx.node(0, NodeState::uninformed);
    on_timer(0, uninformed, fx.ctx(), fx.rng, out);
    REQUIRE(out.size() == 1);
    CHECK(out[0].kind == MessageKind::pull_request);
    CHECK_FALSE(out[0].carries_rumour);
    CHECK(out[0].size().total_bits() == 160);
}

TEST_CASE("timer: targets are out-neighbors")
{
    Fixture fx;
    fx.fanout.f_abs = 3;
    auto n0 = fx.node(0, NodeState::informed);
    std::vector<ProtocolMessage> out;
    on_timer(0, n0, fx.ctx(), fx.rng, out);
    REQUIRE(out.size() == 3);
    std::vector<NodeId> dsts;
    for (const auto& m : out)
        dsts.push_back(m.dst);
    std::sort(dsts.begin(), dsts.end());
    CHECK(dsts == std::vector<NodeId>{1, 2, 3});
}

TEST_CASE("timer: spent budget stops the node")
{
    Fixture fx(Criterion::log_n); // n = 4 -> budget 1
    REQUIRE(fx.rule->tick_limit() == 1);
    std::vector<ProtocolMessage> out;

    auto informed = fx.node(0, NodeState::informed);
    informed.tick_count = 1;
    const auto t = on_timer(0, informed, fx.ctx(), fx.rng, out);
    CHECK(informed.state == NodeState::removed);
    CHECK(out.empty());
    CHECK(t.initiated == 0);
    CHECK_FALSE(t.reschedule);

    auto uninformed = fx.node(1, NodeState::uninformed);
    uninformed.tick_count = 1;
    on_timer(1, uninformed, fx.ctx(), fx.rng, out);
    CHECK(uninformed.state == NodeState::dormant);
    CHECK(out.empty());

    CHECK_THROWS_AS(on_timer(0, informed, fx.ctx(), fx.rng, out), std::logic_error);
}

TEST_CASE("push delivery")
{
    Fixture fx;
    auto v = fx.node(1, NodeState::uninformed);
    CHECK(on_push(v, push_from(0, 1), 3.2, fx.ctx()));
    CHECK(v.state == NodeState::informed);
    CHECK(v.first_informed_at == 3.2);

    CHECK_FALSE(on_push(v, push_from(2, 1), 5.0, fx.ctx()));
    CHECK(v.first_informed_at == 3.2);

    auto removed = fx.node(1, NodeState::removed);
    CHECK_FALSE(on_push(removed, push_from(0, 1), 1.0, fx.ctx()));
    CHECK(removed.state == NodeState::removed);

    auto dormant = fx.node(1, NodeState::dormant);
    CHECK(on_push(dormant, push_from(0, 1), 4.0, fx.ctx()));
    CHECK(dormant.state == NodeState::informed);

    CHECK_THROWS_AS(on_push(v, ProtocolMessage{MessageKind::pull_request, 0, 1}, 1.0, fx.ctx()), std::logic_error);
}

TEST_CASE("pull requests are always answered")
{
    Fixture fx;
    const ProtocolMessage req{MessageKind::pull_request, 2, 0, false, std::nullopt};

    const auto informed = on_pull_request(fx.node(0, NodeState::informed), req, fx.ctx());
    CHECK(informed.kind == MessageKind::pull_reply);
    CHECK(informed.src == 0);
    CHECK(informed.dst == 2);
    CHECK(informed.carries_rumour);

    CHECK_FALSE(on_pull_request(fx.node(0, NodeState::uninformed), req, fx.ctx()).carries_rumour);
    CHECK_FALSE(on_pull_request(fx.node(0, NodeState::dormant), req, fx.ctx()).carries_rumour);
    CHECK_FALSE(on_pull_request(fx.node(0, NodeState::removed), req, fx.ctx()).carries_rumour);
    CHECK(on_pull_request(fx.node(0, NodeState::removed), req, fx.ctx(RemovedReplies::rumour)).carries_rumour);
}

TEST_CASE("pull replies")
{
    Fixture fx;
    const ProtocolMessage full{MessageKind::pull_reply, 0, 1, true, std::nullopt};
    const ProtocolMessage empty{MessageKind::pull_reply, 0, 1, false, std::nullopt};

    auto a = fx.node(1, NodeState::uninformed);
    CHECK(on_pull_reply(a, full, 2.0, fx.ctx()));
    CHECK(a.state == NodeState::informed);

    auto b = fx.node(1, NodeState::uninformed);
    CHECK_FALSE(on_pull_reply(b, empty, 2.0, fx.ctx()));
    CHECK(b.state == NodeState::uninformed);

    CHECK_FALSE(on_pull_reply(a, full, 3.0, fx.ctx()));
    CHECK(a.first_informed_at == 2.0);
}

TEST_CASE("median counter rides rumour-bearing messages")
{
    Fixture fx(Criterion::median_counter);
    std::vector<ProtocolMessage> out;
    auto src = fx.node(0, NodeState::informed);
    median_counter_start(src.stopping, fx.rule->mc());
    on_timer(0, src, fx.ctx(), fx.rng, out);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].mc.has_value());
    CHECK(out[0].mc->phase == McPhase::B);

    auto dst = fx.node(out[0].dst, NodeState::uninformed);
    on_push(dst, out[0], 1.0, fx.ctx());
    CHECK(dst.stopping.has_counter);
    CHECK(dst.stopping.observations.size() == 1);

    out.clear();
    auto puller = fx.node(1, NodeState::uninformed);
    on_timer(1, puller, fx.ctx(), fx.rng, out);
    REQUIRE(out.size() == 1);
    CHECK_FALSE(out[0].mc.has_value());
}

TEST_CASE("median counter safety cap stops every node")
{
    Fixture fx(Criterion::median_counter);
    const auto cap = fx.rule->tick_limit();
    std::vector<ProtocolMessage> out;
    auto v = fx.node(1, NodeState::uninformed);
    std::uint64_t ticks = 0;
    while (on_timer(1, v, fx.ctx(), fx.rng, out).reschedule)
        ++ticks;
    CHECK(ticks == cap);
    CHECK(v.state == NodeState::dormant);
}

TEST_CASE("fan-out count")
{
    FanoutConfig abs;
    abs.f_abs = 3;
    CHECK(fanout_count(abs, std::nullopt, 2) == 2);
    CHECK(fanout_count(abs, std::nullopt, 10) == 3);
    CHECK(fanout_count(abs, std::nullopt, 0) == 0);

    FanoutConfig rel;
    rel.mode = FanoutMode::relative;
    rel.f_rel = 0.04;
    CHECK(fanout_count(rel, std::nullopt, 10) == 1);
    CHECK(fanout_count(rel, std::nullopt, 100) == 4);
    CHECK(fanout_count(rel, std::nullopt, 25) == 1);
    rel.f_rel = 0.07;
    CHECK(fanout_count(rel, std::nullopt, 100) == 7);

    FanoutConfig hybrid;
    hybrid.mode = FanoutMode::hybrid;
    hybrid.f_rel = 0.10;
    hybrid.hybrid_middle_abs = 2;
    CHECK(fanout_count(hybrid, Group::middle, 50) == 2);
    CHECK(fanout_count(hybrid, Group::giant, 50) == 5);
    CHECK(fanout_count(hybrid, Group::singleton, 1) == 1);
    CHECK_THROWS_AS(fanout_count(hybrid, std::nullopt, 5), std::invalid_argument);
}

TEST_CASE("property: fan-out stays within [1, degree]")
{
    Rng rng(4);
    for (int i = 0; i < 5000; ++i) {
        FanoutConfig cfg;
        cfg.mode = static_cast<FanoutMode>(rng.below(3));
        cfg.f_abs = 1 + rng.below(20);
        cfg.f_rel = rng.uniform01();
        cfg.hybrid_middle_abs = 1 + rng.below(5);
        const std::size_t d = 1 + rng.below(500);
        const auto f = fanout_count(cfg, static_cast<Group>(1 + rng.below(3)), d);
        REQUIRE(f >= 1);
        REQUIRE(f <= d);
    }
}

} // TEST_SUITE
