#include "gossip/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gossip {

std::string_view to_string(Criterion c)
{
    switch (c) {
    case Criterion::none: return "none";
    case Criterion::log3_lnln: return "log3lnln";
    case Criterion::log_n: return "logn";
    case Criterion::log_sq_n: return "log2n";
    case Criterion::n_log_n: return "nlogn";
    case Criterion::median_counter: return "median";
    }
    return "?";
}

Criterion parse_criterion(std::string_view text)
{
    if (text == "none") return Criterion::none;
    if (text == "log3lnln") return Criterion::log3_lnln;
    if (text == "logn") return Criterion::log_n;
    if (text == "log2n") return Criterion::log_sq_n;
    if (text == "nlogn") return Criterion::n_log_n;
    if (text == "median") return Criterion::median_counter;
    throw std::invalid_argument("unknown stopping criterion '" + std::string(text) + "'");
}

void StoppingConfig::validate() const
{
    if (!(log_base > 1.0))
        throw std::invalid_argument("log_base must be > 1");
    if (!(c_lnln > 0 && c_log > 0 && c_logsq > 0 && c_nlogn > 0))
        throw std::invalid_argument("stopping multipliers must be > 0");
    if (!(mc_safety > 0))
        throw std::invalid_argument("mc_safety must be > 0");
}

std::uint64_t tick_budget(const StoppingConfig& cfg, std::size_t n)
{
    if (!is_budget_criterion(cfg.criterion))
        throw std::logic_error("tick_budget: criterion has no tick budget");
    if (n < 2)
        throw std::invalid_argument("tick_budget: requires n >= 2");
    const double nn = static_cast<double>(n);
    const double log_b = std::log(nn) / std::log(cfg.log_base);
    double budget = 0;
    switch (cfg.criterion) {
    case Criterion::log3_lnln: budget = std::log(nn) / std::log(3.0) + cfg.c_lnln * std::log(std::log(nn)); break;
    case Criterion::log_n: budget = cfg.c_log * log_b; break;
    case Criterion::log_sq_n: budget = cfg.c_logsq * log_b * log_b; break;
    case Criterion::n_log_n: budget = cfg.c_nlogn * nn * log_b; break;
    default: break;
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(budget)));
}

McParams median_counter_params(const StoppingConfig& cfg, std::size_t n)
{
    const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
    const double lglg = std::log2(std::max(1.0, std::log2(nn)));
    McParams p;
    p.ctr_max = cfg.mc_ctr_max > 0 ? cfg.mc_ctr_max : static_cast<std::uint32_t>(std::ceil(2.0 * lglg)) + 1;
    p.c_phase = cfg.mc_c_phase > 0 ? cfg.mc_c_phase
                                   : std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(2.0 * lglg)));
    p.safety_ticks = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(cfg.mc_safety * std::ceil(std::log2(nn)))));
    return p;
}

StoppingRule::StoppingRule(const StoppingConfig& cfg, std::size_t n) : criterion_(cfg.criterion)
{
    cfg.validate();
    if (is_budget_criterion(criterion_) && n >= 2)
        limit_ = tick_budget(cfg, n);
    if (criterion_ == Criterion::median_counter) {
        mc_ = median_counter_params(cfg, n);
        limit_ = mc_.safety_ticks;
    }
}

void median_counter_start(StoppingState& ss, const McParams& params)
{
    ss.has_counter = true;
    ss.observations.clear();
    ss.counter = 1;
    if (params.ctr_max <= 1) {
        ss.phase = McPhase::C;
        ss.countdown = params.c_phase;
    } else {
        ss.phase = McPhase::B;
    }
}

void median_counter_observe(StoppingState& ss, McAnnotation annotation, bool carries_rumour)
{
    if (!carries_rumour)
        throw std::logic_error("median counter annotation on a message without the rumour");
    if (!ss.has_counter || ss.phase == McPhase::D)
        return;
    ss.observations.push_back(annotation);
}

StopDecision median_counter_tick(StoppingState& ss, const McParams& params)
{
    StopDecision decision = StopDecision::proceed;
    switch (ss.phase) {
    case McPhase::B: {
        std::size_t high = 0;
        std::size_t low = 0;
        for (const auto& obs : ss.observations) {
            if (obs.phase != McPhase::B || obs.counter >= ss.counter)
                ++high;
            else
                ++low;
        }
        if (high > low)
            ++ss.counter;
        if (ss.counter >= params.ctr_max) {
            ss.counter = params.ctr_max;
            ss.phase = McPhase::C;
            ss.countdown = params.c_phase;
        }
        break;
    }
    case McPhase::C:
        if (ss.countdown > 0)
            --ss.countdown;
        if (ss.countdown == 0) {
            ss.phase = McPhase::D;
            decision = StopDecision::stop;
        }
        break;
    case McPhase::D:
        decision = StopDecision::stop;
        break;
    }
    ss.observations.clear();
    return decision;
}

} // namespace gossip
