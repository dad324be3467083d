#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/netmodel.hpp"
#include "gossip/policies.hpp"
#include "gossip/rng.hpp"
#include "gossip/stopping.hpp"

namespace gossip {

/// Dormant: budget ran out before the node ever heard the rumour.
enum class NodeState : std::uint8_t { uninformed, informed, removed, dormant };

std::string_view to_string(NodeState s);

struct NodeRuntime {
    NodeState state = NodeState::uninformed;
    std::optional<double> first_informed_at;
    std::uint64_t tick_count = 0;
    PolicyState policy;
    StoppingState stopping;
};

enum class MessageKind : std::uint8_t { push, pull_request, pull_reply };

std::string_view to_string(MessageKind k);

struct ProtocolMessage {
    MessageKind kind = MessageKind::push;
    NodeId src = 0;
    NodeId dst = 0;
    bool carries_rumour = false;
    std::optional<McAnnotation> mc;

    MessageSize size() const { return carries_rumour ? MessageSize::with_rumour() : MessageSize::empty(); }
    bool operator==(const ProtocolMessage&) const = default;
};

enum class FanoutMode { absolute, relative, hybrid };

std::string_view to_string(FanoutMode m);
FanoutMode parse_fanout_mode(std::string_view text);

struct FanoutConfig {
    FanoutMode mode = FanoutMode::absolute;
    std::size_t f_abs = 1;
    double f_rel = 0.04;
    std::size_t hybrid_middle_abs = 2;

    void validate() const;
};

/// Contacts per tick. Relative fan-out is floor(f_rel * d) but at least one;
/// hybrid gives middle-region nodes an absolute fan-out and everyone else the
/// relative one. Never exceeds out_degree.
std::size_t fanout_count(const FanoutConfig& cfg, std::optional<Group> group, std::size_t out_degree);

enum class RemovedReplies { empty, rumour };

RemovedReplies parse_removed_replies(std::string_view text);
std::string_view to_string(RemovedReplies r);

/// Read-only per-run inputs the handlers need.
struct ProtocolContext {
    const Graph& graph;
    const StoppingRule& stopping;
    const FanoutConfig& fanout;
    const GroupAssignment* groups = nullptr; // required for hybrid fan-out
    RemovedReplies removed_replies = RemovedReplies::empty;
};

struct TimerOutcome {
    std::size_t initiated = 0; // messages appended by this tick
    bool reschedule = false;
};

/// Timer expiry: informed nodes push, uninformed nodes pull. A node whose
/// budget is spent stops instead (Removed or Dormant) and sends nothing.
TimerOutcome on_timer(NodeId self, NodeRuntime& node, const ProtocolContext& ctx, Rng& rng,
                      std::vector<ProtocolMessage>& out);

/// Returns true when this message informed the node.
bool on_push(NodeRuntime& node, const ProtocolMessage& msg, double now, const ProtocolContext& ctx);

ProtocolMessage on_pull_request(const NodeRuntime& node, const ProtocolMessage& msg, const ProtocolContext& ctx);

/// Returns true when this reply informed the node.
bool on_pull_reply(NodeRuntime& node, const ProtocolMessage& msg, double now, const ProtocolContext& ctx);

} // namespace gossip
