#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/metrics.hpp"
#include "gossip/netmodel.hpp"
#include "gossip/policies.hpp"
#include "gossip/protocol.hpp"
#include "gossip/rng.hpp"
#include "gossip/stopping.hpp"

namespace gossip {

struct ClockConfig {
    double mean_interval = 1.0; // seconds between ticks, exponentially distributed
};

/// Exponential variate with mean cfg.mean_interval; always > 0.
double exp_sample(Rng& rng, const ClockConfig& cfg);

enum class EventKind : std::uint8_t { timer_fire, message_arrival };

struct SimEvent {
    double time = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::timer_fire;
    NodeId node = 0;         // timer_fire
    ProtocolMessage message; // message_arrival
};

/// Min-queue on (time, seq). seq is assigned at scheduling, so simultaneous
/// events pop in insertion order.
class EventQueue {
public:
    /// Throws std::logic_error if time lies before the last popped event.
    void schedule_timer(double time, NodeId node);
    void schedule_arrival(double time, const ProtocolMessage& msg);

    /// nullopt once the queue is exhausted.
    std::optional<SimEvent> next_event();

    double now() const noexcept { return now_; }
    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const noexcept
        {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    void push(SimEvent ev);

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double now_ = 0.0;
};

enum class RunMode { until_all_informed, until_quiescent };

std::string_view to_string(RunMode m);
RunMode parse_run_mode(std::string_view text);

struct SimConfig {
    Policy policy = Policy::random;
    std::size_t memory = 0;
    StoppingConfig stopping;
    FanoutConfig fanout;
    ClockConfig clock;
    RunMode run_mode = RunMode::until_all_informed;
    double max_sim_time = 1e5;
    RemovedReplies removed_replies = RemovedReplies::empty;
    double group_percentile = default_group_percentile;

    void validate() const;
};

enum class Termination { all_informed, quiescent, time_limit };

std::string_view to_string(Termination t);

struct RunOutcome {
    RunMetrics metrics;
    Termination termination = Termination::quiescent;
};

/// Hooks for tests and trace output. Default implementations do nothing.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void on_event(const SimEvent& /*ev*/) {}
    virtual void on_send(double /*now*/, const ProtocolMessage& /*msg*/, double /*arrival*/) {}
    virtual void on_informed(double /*now*/, NodeId /*node*/) {}
    virtual void on_tick(double /*now*/, NodeId /*node*/, const TimerOutcome& /*outcome*/,
                         NodeState /*state_after*/) {}
};

/// Writes one line per popped event: time, kind, src, dst, message type.
class TraceWriter : public RunObserver {
public:
    explicit TraceWriter(std::ostream& out) : out_(out) {}
    void on_event(const SimEvent& ev) override;

private:
    std::ostream& out_;
};

/// Everything about a (graph, config) pair that does not change between
/// replications: neighbor orderings, group classes and the stopping rule.
class Scenario {
public:
    Scenario(const Graph& g, SimConfig cfg);

    const Graph& graph() const noexcept { return graph_; }
    const SimConfig& config() const noexcept { return cfg_; }
    const GroupAssignment& groups() const noexcept { return groups_; }
    const StoppingRule& stopping() const noexcept { return stopping_; }

    /// One replication. Throws std::out_of_range for a bad originator.
    RunOutcome run(const LinkTable& links, NodeId originator, Rng& rng, RunObserver* observer = nullptr) const;

private:
    const Graph& graph_;
    SimConfig cfg_;
    NeighborOrdering ordering_;
    GroupAssignment groups_;
    StoppingRule stopping_;
};

RunOutcome run_simulation(const Graph& g, const LinkTable& links, const SimConfig& cfg, NodeId originator,
                          Rng& rng, RunObserver* observer = nullptr);

} // namespace gossip
