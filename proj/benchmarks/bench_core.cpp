#include <benchmark/benchmark.h>

#include "gossip/engine.hpp"

using namespace gossip;

static void BM_EventQueue(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    std::vector<double> times(n);
    for (auto& t : times)
        t = rng.uniform01() * 100;
    for (auto _ : state) {
        EventQueue q;
        for (std::size_t i = 0; i < n; ++i)
            q.schedule_timer(times[i], static_cast<NodeId>(i));
        while (auto ev = q.next_event())
            benchmark::DoNotOptimize(ev->time);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_EventQueue)->Arg(1 << 10)->Arg(1 << 16);

static void BM_SelectTargets(benchmark::State& state)
{
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto f = static_cast<std::size_t>(state.range(1));
    std::vector<NodeId> list(d);
    for (std::size_t i = 0; i < d; ++i)
        list[i] = static_cast<NodeId>(i);
    PolicyState ps;
    ps.memory_size = static_cast<std::size_t>(state.range(2));
    ps.contacts = list;
    Rng rng(2);
    std::vector<NodeId> out;
    for (auto _ : state) {
        out.clear();
        select_targets(ps, f, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_SelectTargets)->Args({16, 1, 0})->Args({16, 1, 4})->Args({1000, 40, 0})->Args({1000, 40, 10});

static void BM_FullRun(benchmark::State& state)
{
    Rng grng(3);
    const Graph g = generate_pa(static_cast<std::size_t>(state.range(0)), 7, grng);
    SimConfig cfg;
    cfg.policy = static_cast<Policy>(state.range(1));
    const Scenario scenario(g, cfg);
    std::uint64_t r = 0;
    for (auto _ : state) {
        Rng rng(derive_run_seed(4, r++));
        const auto links = assign_links(g.node_count(), rng);
        const auto out = scenario.run(links, 0, rng);
        benchmark::DoNotOptimize(out.metrics.end_time);
    }
}
BENCHMARK(BM_FullRun)->Args({1858, 0})->Args({1858, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
