#include "gossip/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gossip {

std::string_view to_string(NodeState s)
{
    switch (s) {
    case NodeState::uninformed: return "uninformed";
    case NodeState::informed: return "informed";
    case NodeState::removed: return "removed";
    case NodeState::dormant: return "dormant";
    }
    return "?";
}

std::string_view to_string(MessageKind k)
{
    switch (k) {
    case MessageKind::push: return "push";
    case MessageKind::pull_request: return "pull_request";
    case MessageKind::pull_reply: return "pull_reply";
    }
    return "?";
}

std::string_view to_string(FanoutMode m)
{
    switch (m) {
    case FanoutMode::absolute: return "absolute";
    case FanoutMode::relative: return "relative";
    case FanoutMode::hybrid: return "hybrid";
    }
    return "?";
}

FanoutMode parse_fanout_mode(std::string_view text)
{
    if (text == "absolute") return FanoutMode::absolute;
    if (text == "relative") return FanoutMode::relative;
    if (text == "hybrid") return FanoutMode::hybrid;
    throw std::invalid_argument("unknown fan-out mode '" + std::string(text) + "'");
}

RemovedReplies parse_removed_replies(std::string_view text)
{
    if (text == "empty") return RemovedReplies::empty;
    if (text == "rumour") return RemovedReplies::rumour;
    throw std::invalid_argument("unknown removed_replies value '" + std::string(text) + "'");
}

std::string_view to_string(RemovedReplies r)
{
    return r == RemovedReplies::empty ? "empty" : "rumour";
}

void FanoutConfig::validate() const
{
    if (f_abs < 1)
        throw std::invalid_argument("f_abs must be >= 1");
    if (!(f_rel >= 0.0 && f_rel <= 1.0))
        throw std::invalid_argument("f_rel must lie in [0, 1]");
    if (hybrid_middle_abs < 1)
        throw std::invalid_argument("hybrid_middle_abs must be >= 1");
}

namespace {

std::size_t relative_count(double f_rel, std::size_t d)
{
    const auto scaled = static_cast<std::size_t>(std::floor(f_rel * static_cast<double>(d) + 1e-9));
    return std::min(d, std::max<std::size_t>(1, scaled));
}

} // namespace

std::size_t fanout_count(const FanoutConfig& cfg, std::optional<Group> group, std::size_t out_degree)
{
    if (out_degree == 0)
        return 0;
    switch (cfg.mode) {
    case FanoutMode::absolute:
        return std::min(cfg.f_abs, out_degree);
    case FanoutMode::relative:
        return relative_count(cfg.f_rel, out_degree);
    case FanoutMode::hybrid:
        if (!group)
            throw std::invalid_argument("hybrid fan-out needs a group assignment");
        if (*group == Group::middle)
            return std::min(cfg.hybrid_middle_abs, out_degree);
        return relative_count(cfg.f_rel, out_degree);
    }
    return 1;
}

namespace {

void become_informed(NodeRuntime& node, double now, const ProtocolContext& ctx)
{
    node.state = NodeState::informed;
    node.first_informed_at = now;
    if (ctx.stopping.uses_median_counter())
        median_counter_start(node.stopping, ctx.stopping.mc());
}

void observe(NodeRuntime& node, const ProtocolMessage& msg, const ProtocolContext& ctx)
{
    if (ctx.stopping.uses_median_counter() && msg.mc && node.state == NodeState::informed)
        median_counter_observe(node.stopping, *msg.mc, msg.carries_rumour);
}

} // namespace

TimerOutcome on_timer(NodeId self, NodeRuntime& node, const ProtocolContext& ctx, Rng& rng,
                      std::vector<ProtocolMessage>& out)
{
    if (node.state == NodeState::removed || node.state == NodeState::dormant)
        throw std::logic_error("on_timer: node has no timer in state " + std::string(to_string(node.state)));

    if (ctx.stopping.exhausted(node.tick_count)) {
        node.state = node.state == NodeState::informed ? NodeState::removed : NodeState::dormant;
        return {};
    }

    const bool informed = node.state == NodeState::informed;
    const std::size_t degree = node.policy.contacts.size();
    std::optional<Group> group;
    if (ctx.groups)
        group = ctx.groups->group[self];
    const std::size_t f = fanout_count(ctx.fanout, group, degree);

    TimerOutcome result;
    if (f > 0) {
        std::vector<NodeId> targets;
        targets.reserve(f);
        select_targets(node.policy, f, rng, targets);
        std::optional<McAnnotation> mc;
        if (informed && node.stopping.has_counter)
            mc = node.stopping.annotation();
        for (NodeId t : targets) {
            out.push_back({informed ? MessageKind::push : MessageKind::pull_request, self, t, informed,
                           informed ? mc : std::nullopt});
        }
        result.initiated = targets.size();
    }
    ++node.tick_count;

    if (informed && node.stopping.has_counter
        && median_counter_tick(node.stopping, ctx.stopping.mc()) == StopDecision::stop) {
        node.state = NodeState::removed;
        return result;
    }
    result.reschedule = true;
    return result;
}

bool on_push(NodeRuntime& node, const ProtocolMessage& msg, double now, const ProtocolContext& ctx)
{
    if (msg.kind != MessageKind::push)
        throw std::logic_error("on_push: not a push message");
    bool informed_now = false;
    if (node.state == NodeState::uninformed || node.state == NodeState::dormant) {
        become_informed(node, now, ctx);
        informed_now = true;
    }
    observe(node, msg, ctx);
    return informed_now;
}

ProtocolMessage on_pull_request(const NodeRuntime& node, const ProtocolMessage& msg, const ProtocolContext& ctx)
{
    if (msg.kind != MessageKind::pull_request)
        throw std::logic_error("on_pull_request: not a pull request");
    ProtocolMessage reply{MessageKind::pull_reply, msg.dst, msg.src, false, std::nullopt};
    const bool shares = node.state == NodeState::informed
                        || (node.state == NodeState::removed && ctx.removed_replies == RemovedReplies::rumour);
    if (shares) {
        reply.carries_rumour = true;
        if (node.stopping.has_counter)
            reply.mc = node.stopping.annotation();
    }
    return reply;
}

bool on_pull_reply(NodeRuntime& node, const ProtocolMessage& msg, double now, const ProtocolContext& ctx)
{
    if (msg.kind != MessageKind::pull_reply)
        throw std::logic_error("on_pull_reply: not a pull reply");
    if (!msg.carries_rumour)
        return false;
    bool informed_now = false;
    if (node.state == NodeState::uninformed || node.state == NodeState::dormant) {
        become_informed(node, now, ctx);
        informed_now = true;
    }
    observe(node, msg, ctx);
    return informed_now;
}

} // namespace gossip
