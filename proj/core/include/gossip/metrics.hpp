#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gossip/protocol.hpp"

namespace gossip {

/// What one run measured. Inform events are kept in time order together with
/// the number of messages generated up to that moment, which is all the
/// time-to-fraction and load metrics need.
struct RunMetrics {
    std::size_t n = 0;
    std::vector<std::optional<double>> first_informed_at;
    std::vector<double> inform_times;                 // k-th entry: when the (k+1)-th node learned it
    std::vector<std::uint64_t> messages_at_inform;    // messages generated by inform_times[k]
    std::array<std::uint64_t, 3> messages_sent{};     // indexed by MessageKind
    std::uint64_t empty_replies = 0;
    double end_time = 0.0;

    explicit RunMetrics(std::size_t nodes = 0) : n(nodes), first_informed_at(nodes) {}

    std::size_t informed_count() const noexcept { return inform_times.size(); }
    std::uint64_t total_messages() const noexcept { return messages_sent[0] + messages_sent[1] + messages_sent[2]; }
    double final_informed_pct() const noexcept
    {
        return n == 0 ? 0.0 : static_cast<double>(informed_count()) / static_cast<double>(n);
    }

    void record_send(MessageKind kind, bool carries_rumour);
    void record_informed(NodeId v, double now);
};

/// Number of nodes that make up fraction `pct` of n (ceil, tolerant of
/// representation error such as 0.97 * 100).
std::size_t nodes_for_fraction(double pct, std::size_t n);

/// When the ceil(pct*n)-th node became informed; nullopt if never.
std::optional<double> time_to_fraction(const RunMetrics& m, double pct);

/// Messages generated until the fraction was reached, per second. nullopt
/// when the fraction was not reached or was reached at t = 0.
std::optional<double> network_load(const RunMetrics& m, double pct);

std::optional<std::uint64_t> messages_to_fraction(const RunMetrics& m, double pct);

enum class Direction { reduction, increase };

/// Percentage change of `variant` relative to `baseline` (> 0).
double improvement_pct(double baseline, double variant, Direction direction);

struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation, zero below two samples
};

SampleSummary summarize(std::span<const double> values);

} // namespace gossip
