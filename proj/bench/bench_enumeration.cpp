#include <injhom/gadget_lab.hpp>

#include <benchmark/benchmark.h>

using namespace injhom;

static void tournaments_serial(benchmark::State & state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_reflexive_tournaments_serial(static_cast<int>(state.range(0))));
}
BENCHMARK(tournaments_serial)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void tournaments_parallel(benchmark::State & state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_reflexive_tournaments(static_cast<int>(state.range(0))));
}
BENCHMARK(tournaments_parallel)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

// Enumerates every ios T4 colouring of the Hx gadget, split over `workers` threads.
static void enumerate_hx(benchmark::State & state)
{
    auto hx = load_gadget("Hx");
    auto t4 = named_target(NamedTarget::T4);
    SolveOptions options;
    options.mode = InjectivityMode::IosSeparate;
    options.workers = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate(hx.graph, t4, options).count);
}
BENCHMARK(enumerate_hx)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
