#include "etass/adams.hpp"
#include "etass/bockstein.hpp"
#include "etass/pipeline.hpp"

#include <benchmark/benchmark.h>

namespace {

etass::Truncation window(std::int64_t mw)
{
    etass::Truncation t;
    t.mw_max = static_cast<int>(mw);
    return t;
}

void BM_Bockstein(benchmark::State& state)
{
    const auto t = window(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::run_bockstein(t, {false, false}));
}
BENCHMARK(BM_Bockstein)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BocksteinDense(benchmark::State& state)
{
    const auto t = window(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::run_bockstein(t, {false, true}));
}
BENCHMARK(BM_BocksteinDense)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_Adams(benchmark::State& state)
{
    const auto bock = etass::run_bockstein(window(state.range(0)), {false, false});
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::run_adams(bock.einfty, {false}));
}
BENCHMARK(BM_Adams)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_VerifyAll(benchmark::State& state)
{
    const auto p = etass::Pipeline::run(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::run_suite("all", p));
}
BENCHMARK(BM_VerifyAll)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace
