// Reference computations written independently of the library code.
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double chi_square_uniform(const std::vector<std::size_t>& counts)
{
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0;
    for (std::size_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

// Upper 1% points of the chi-square distribution.
inline double chi_square_critical_001(std::size_t df)
{
    static const double table[] = {6.635,  9.210,  11.345, 13.277, 15.086, 16.812, 18.475,
                                   20.090, 21.666, 23.209, 24.725, 26.217, 27.688, 29.141,
                                   30.578, 32.000, 33.409, 34.805, 36.191, 37.566};
    if (df >= 1 && df <= 20)
        return table[df - 1];
    if (df == 0)
        throw std::invalid_argument("df must be >= 1");
    // Wilson-Hilferty
    const double k = static_cast<double>(df);
    const double z = 2.3263478740;
    const double h = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * h * h * h;
}

// Tick budgets from their defining formulas, spelled out with log10 / log3.
inline std::uint64_t budget_nlogn(std::uint64_t n) { return static_cast<std::uint64_t>(std::ceil(n * std::log10(double(n)))); }
inline std::uint64_t budget_logn(std::uint64_t n) { return static_cast<std::uint64_t>(std::ceil(std::log10(double(n)))); }
inline std::uint64_t budget_logsq(std::uint64_t n)
{
    const double l = std::log10(double(n));
    return static_cast<std::uint64_t>(std::ceil(l * l));
}
inline std::uint64_t budget_log3lnln(std::uint64_t n)
{
    const double x = std::log(double(n)) / std::log(3.0) + 4.0 * std::log(std::log(double(n)));
    return x < 1 ? 1 : static_cast<std::uint64_t>(std::ceil(x));
}

// E[min(a + X, b + Y)] for X, Y ~ Exp(mean mu) independent and a <= b.
inline double race_mean(double a, double b, double mu)
{
    if (a > b)
        std::swap(a, b);
    const double tail = std::exp(-(b - a) / mu);
    return a + mu * (1.0 - tail) + 0.5 * mu * tail;
}

// Expected first-inform time of the non-originator in a two-node graph,
// averaged over uniformly drawn access links. Push leg: one 28-byte message.
// Pull leg: a 20-byte request and a 28-byte reply.
inline double two_node_expected_time(std::size_t samples, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> lat(0.010, 0.100);
    std::uniform_real_distribution<double> bw(3e6, 50e6);
    double sum = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double l0 = lat(gen), l1 = lat(gen);
        const double slow = std::min(bw(gen), bw(gen));
        const double one_way = l0 + l1;
        const double push = one_way + 224.0 / slow;
        const double pull = 2 * one_way + (160.0 + 224.0) / slow;
        sum += race_mean(push, pull, 1.0);
    }
    return sum / static_cast<double>(samples);
}

} // namespace oracle
