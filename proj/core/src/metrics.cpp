#include "gossip/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace gossip {

void RunMetrics::record_send(MessageKind kind, bool carries_rumour)
{
    ++messages_sent[static_cast<std::size_t>(kind)];
    if (kind == MessageKind::pull_reply && !carries_rumour)
        ++empty_replies;
}

void RunMetrics::record_informed(NodeId v, double now)
{
    first_informed_at[v] = now;
    inform_times.push_back(now);
    messages_at_inform.push_back(total_messages());
}

std::size_t nodes_for_fraction(double pct, std::size_t n)
{
    if (!(pct > 0.0 && pct <= 1.0))
        throw std::invalid_argument("fraction must lie in (0, 1]");
    const auto k = static_cast<std::size_t>(std::ceil(pct * static_cast<double>(n) - 1e-9));
    return std::max<std::size_t>(1, k);
}

std::optional<double> time_to_fraction(const RunMetrics& m, double pct)
{
    const std::size_t k = nodes_for_fraction(pct, m.n);
    if (k > m.inform_times.size())
        return std::nullopt;
    return m.inform_times[k - 1];
}

std::optional<std::uint64_t> messages_to_fraction(const RunMetrics& m, double pct)
{
    const std::size_t k = nodes_for_fraction(pct, m.n);
    if (k > m.messages_at_inform.size())
        return std::nullopt;
    return m.messages_at_inform[k - 1];
}

std::optional<double> network_load(const RunMetrics& m, double pct)
{
    const auto t = time_to_fraction(m, pct);
    if (!t || *t <= 0.0)
        return std::nullopt;
    return static_cast<double>(*messages_to_fraction(m, pct)) / *t;
}

double improvement_pct(double baseline, double variant, Direction direction)
{
    if (!(baseline > 0.0))
        throw std::invalid_argument("improvement_pct: baseline must be > 0");
    const double diff = direction == Direction::reduction ? baseline - variant : variant - baseline;
    return diff / baseline * 100.0;
}

SampleSummary summarize(std::span<const double> values)
{
    SampleSummary s;
    s.count = values.size();
    if (values.empty())
        return s;
    double sum = 0.0;
    for (double v : values)
        sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values)
            sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

} // namespace gossip
