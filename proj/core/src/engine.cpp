#include "gossip/engine.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace gossip {

double exp_sample(Rng& rng, const ClockConfig& cfg)
{
    return rng.exponential(cfg.mean_interval);
}

void EventQueue::push(SimEvent ev)
{
    if (ev.time < now_)
        throw std::logic_error("event scheduled in the past");
    ev.seq = next_seq_++;
    heap_.push(std::move(ev));
}

void EventQueue::schedule_timer(double time, NodeId node)
{
    SimEvent ev;
    ev.time = time;
    ev.kind = EventKind::timer_fire;
    ev.node = node;
    push(std::move(ev));
}

void EventQueue::schedule_arrival(double time, const ProtocolMessage& msg)
{
    SimEvent ev;
    ev.time = time;
    ev.kind = EventKind::message_arrival;
    ev.node = msg.dst;
    ev.message = msg;
    push(std::move(ev));
}

std::optional<SimEvent> EventQueue::next_event()
{
    if (heap_.empty())
        return std::nullopt;
    SimEvent ev = heap_.top();
    heap_.pop();
    now_ = ev.time;
    return ev;
}

std::string_view to_string(RunMode m)
{
    return m == RunMode::until_all_informed ? "until_all_informed" : "until_quiescent";
}

RunMode parse_run_mode(std::string_view text)
{
    if (text == "until_all_informed") return RunMode::until_all_informed;
    if (text == "until_quiescent") return RunMode::until_quiescent;
    throw std::invalid_argument("unknown run mode '" + std::string(text) + "'");
}

std::string_view to_string(Termination t)
{
    switch (t) {
    case Termination::all_informed: return "all_informed";
    case Termination::quiescent: return "quiescent";
    case Termination::time_limit: return "time_limit";
    }
    return "?";
}

void SimConfig::validate() const
{
    if (memory > 0 && is_quasirandom(policy))
        throw std::invalid_argument("memory > 0 requires policy random");
    if (!(clock.mean_interval > 0.0))
        throw std::invalid_argument("clock mean interval must be > 0");
    if (!(max_sim_time > 0.0))
        throw std::invalid_argument("max_sim_time must be > 0");
    if (!(group_percentile > 0.0 && group_percentile < 1.0))
        throw std::invalid_argument("group percentile must lie in (0, 1)");
    stopping.validate();
    fanout.validate();
}

void TraceWriter::on_event(const SimEvent& ev)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", ev.time);
    out_ << buf;
    if (ev.kind == EventKind::timer_fire) {
        out_ << "\ttimer\t" << ev.node << "\t-\t-\n";
    } else {
        const auto& m = ev.message;
        out_ << "\tarrival\t" << m.src << '\t' << m.dst << '\t' << to_string(m.kind);
        if (m.kind == MessageKind::pull_reply && !m.carries_rumour)
            out_ << "_empty";
        out_ << '\n';
    }
}

Scenario::Scenario(const Graph& g, SimConfig cfg)
    : graph_(g),
      cfg_((cfg.validate(), std::move(cfg))),
      ordering_(g, cfg_.policy),
      groups_(classify_groups(g, cfg_.group_percentile)),
      stopping_(cfg_.stopping, g.node_count())
{
}

RunOutcome Scenario::run(const LinkTable& links, NodeId originator, Rng& rng, RunObserver* observer) const
{
    const std::size_t n = graph_.node_count();
    if (originator >= n)
        throw std::out_of_range("originator " + std::to_string(originator) + " outside [0, "
                                + std::to_string(n) + ")");
    if (links.size() != n)
        throw std::invalid_argument("link table size does not match graph");

    const ProtocolContext ctx{graph_, stopping_, cfg_.fanout, &groups_, cfg_.removed_replies};
    RunOutcome outcome{RunMetrics(n), Termination::quiescent};
    RunMetrics& metrics = outcome.metrics;

    std::vector<NodeRuntime> nodes(n);
    for (NodeId v = 0; v < n; ++v)
        nodes[v].policy = init_policy_state(v, ordering_, cfg_.memory, rng);

    auto mark_informed = [&](NodeId v, double now) {
        metrics.record_informed(v, now);
        if (observer)
            observer->on_informed(now, v);
    };

    nodes[originator].state = NodeState::informed;
    nodes[originator].first_informed_at = 0.0;
    if (stopping_.uses_median_counter())
        median_counter_start(nodes[originator].stopping, stopping_.mc());
    mark_informed(originator, 0.0);

    EventQueue queue;
    for (NodeId v = 0; v < n; ++v)
        queue.schedule_timer(exp_sample(rng, cfg_.clock), v);

    const bool stop_when_all = cfg_.run_mode == RunMode::until_all_informed;
    if (stop_when_all && metrics.informed_count() == n) {
        outcome.termination = Termination::all_informed;
        return outcome;
    }

    auto send = [&](const ProtocolMessage& msg, double now) {
        metrics.record_send(msg.kind, msg.carries_rumour);
        const double arrival = now + message_delay(links, msg.src, msg.dst, msg.size());
        queue.schedule_arrival(arrival, msg);
        if (observer)
            observer->on_send(now, msg, arrival);
    };

    std::vector<ProtocolMessage> outgoing;
    while (true) {
        auto ev = queue.next_event();
        if (!ev) {
            outcome.termination = Termination::quiescent;
            break;
        }
        if (ev->time > cfg_.max_sim_time) {
            outcome.termination = Termination::time_limit;
            metrics.end_time = cfg_.max_sim_time;
            return outcome;
        }
        const double now = ev->time;
        metrics.end_time = now;
        if (observer)
            observer->on_event(*ev);

        if (ev->kind == EventKind::timer_fire) {
            NodeRuntime& node = nodes[ev->node];
            outgoing.clear();
            const TimerOutcome tick = on_timer(ev->node, node, ctx, rng, outgoing);
            for (const auto& msg : outgoing)
                send(msg, now);
            if (tick.reschedule)
                queue.schedule_timer(now + exp_sample(rng, cfg_.clock), ev->node);
            if (observer)
                observer->on_tick(now, ev->node, tick, node.state);
            continue;
        }

        const ProtocolMessage& msg = ev->message;
        NodeRuntime& node = nodes[msg.dst];
        switch (msg.kind) {
        case MessageKind::push:
            if (on_push(node, msg, now, ctx))
                mark_informed(msg.dst, now);
            break;
        case MessageKind::pull_request:
            send(on_pull_request(node, msg, ctx), now);
            break;
        case MessageKind::pull_reply:
            if (on_pull_reply(node, msg, now, ctx))
                mark_informed(msg.dst, now);
            break;
        }
        if (stop_when_all && metrics.informed_count() == n) {
            outcome.termination = Termination::all_informed;
            break;
        }
    }
    return outcome;
}

RunOutcome run_simulation(const Graph& g, const LinkTable& links, const SimConfig& cfg, NodeId originator,
                          Rng& rng, RunObserver* observer)
{
    return Scenario(g, cfg).run(links, originator, rng, observer);
}

} // namespace gossip
