#include "hybzono/queries.hpp"
#include "hybzono/reach.hpp"
#include "hybzono/reduce.hpp"

#include <benchmark/benchmark.h>

using namespace hybzono;

namespace
{
const ReachResult& pwa_run(bool reduced)
{
    static const MldModel model = build_pwa_two_mode();
    auto run = [](bool r) {
        ReachOptions o;
        o.steps = 15;
        o.track_tree = true;
        o.reduce_inequalities = r;
        o.reduce_binaries = r;
        return reach(model.R0, model, o);
    };
    static const ReachResult plain = run(false);
    static const ReachResult red = run(true);
    return reduced ? red : plain;
}
} // namespace

static void BM_ReachStepPwa(benchmark::State& state)
{
    const MldModel m = build_pwa_two_mode();
    const HybridZonotope& Rk = pwa_run(false).sets[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(reach_step(Rk, m.sys, m.domains.U, m.domains.W));
}
BENCHMARK(BM_ReachStepPwa)->Arg(1)->Arg(14);

static void BM_SupportPwa(benchmark::State& state)
{
    const HybridZonotope& z = pwa_run(state.range(1) != 0).sets[static_cast<std::size_t>(state.range(0))];
    Vector l(2);
    l << 0.6, 0.8;
    for (auto _ : state)
        benchmark::DoNotOptimize(support_value(z, l));
}
BENCHMARK(BM_SupportPwa)->Args({5, 0})->Args({15, 0})->Args({15, 1})->Unit(benchmark::kMillisecond);

static void BM_EnumeratePwa(benchmark::State& state)
{
    const HybridZonotope& z = pwa_run(false).sets[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_integer_feasible(z));
}
BENCHMARK(BM_EnumeratePwa)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_GrowTreePwa(benchmark::State& state)
{
    const ReachResult& r = pwa_run(false);
    const std::size_t k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(grow_tree(r.sets[k], r.trees[k - 1]));
}
BENCHMARK(BM_GrowTreePwa)->Arg(5)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_RemoveRedundantPwa(benchmark::State& state)
{
    const ReachResult& r = pwa_run(true);
    const MldModel m = build_pwa_two_mode();
    const HybridZonotope next = reach_step(r.sets[9], m.sys, m.domains.U, m.domains.W);
    ReduceOptions o;
    o.first_column = r.sets[9].ng();
    for (auto _ : state)
        benchmark::DoNotOptimize(remove_redundant_inequalities(next, o));
}
BENCHMARK(BM_RemoveRedundantPwa)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
