#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace gossip {

enum class Criterion { none, log3_lnln, log_n, log_sq_n, n_log_n, median_counter };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view text);
constexpr bool is_budget_criterion(Criterion c) noexcept
{
    return c != Criterion::none && c != Criterion::median_counter;
}

struct StoppingConfig {
    Criterion criterion = Criterion::none;
    double log_base = 10.0;
    double c_lnln = 4.0;
    double c_log = 1.0;
    double c_logsq = 1.0;
    double c_nlogn = 1.0;
    // Median counter; zero means "derive from n".
    std::uint32_t mc_ctr_max = 0;
    std::uint32_t mc_c_phase = 0;
    double mc_safety = 4.0;

    void validate() const;
};

/// Number of ticks a node may spend initiating messages under a budget criterion.
std::uint64_t tick_budget(const StoppingConfig& cfg, std::size_t n);

enum class McPhase : std::uint8_t { B, C, D };

/// Counter state piggybacked on rumour-bearing messages.
struct McAnnotation {
    McPhase phase = McPhase::B;
    std::uint32_t counter = 1;

    bool operator==(const McAnnotation&) const = default;
};

struct McParams {
    std::uint32_t ctr_max = 1;
    std::uint32_t c_phase = 1;
    std::uint64_t safety_ticks = 1;
};

McParams median_counter_params(const StoppingConfig& cfg, std::size_t n);

struct StoppingState {
    bool has_counter = false; // set once the node is informed under median counter
    McPhase phase = McPhase::B;
    std::uint32_t counter = 1;
    std::uint32_t countdown = 0;
    std::vector<McAnnotation> observations; // since the node's previous tick

    McAnnotation annotation() const { return {phase, counter}; }
};

enum class StopDecision { proceed, stop };

/// Resolved stopping rule for one run on an n-node graph.
class StoppingRule {
public:
    StoppingRule(const StoppingConfig& cfg, std::size_t n);

    Criterion criterion() const noexcept { return criterion_; }
    bool uses_median_counter() const noexcept { return criterion_ == Criterion::median_counter; }
    /// Ticks after which a node stops regardless of state; max() when unbounded.
    std::uint64_t tick_limit() const noexcept { return limit_; }
    bool exhausted(std::uint64_t ticks_taken) const noexcept { return ticks_taken >= limit_; }
    const McParams& mc() const noexcept { return mc_; }

private:
    Criterion criterion_;
    std::uint64_t limit_ = std::numeric_limits<std::uint64_t>::max();
    McParams mc_;
};

/// Puts a freshly informed node into phase B with counter 1 (straight to C
/// when the counter ceiling is 1).
void median_counter_start(StoppingState& ss, const McParams& params);

/// Records the annotation of an incoming message. Only rumour-bearing
/// messages carry one; anything else is a contract violation.
void median_counter_observe(StoppingState& ss, McAnnotation annotation, bool carries_rumour);

/// One local round. In B the counter advances when strictly more observations
/// are at or above it (or past B) than below it; reaching ctr_max enters C,
/// which lasts c_phase ticks before the node stops in D.
StopDecision median_counter_tick(StoppingState& ss, const McParams& params);

} // namespace gossip
