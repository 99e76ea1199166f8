#include "etass/gf2.hpp"

#include <benchmark/benchmark.h>

#include <random>

using etass::gf2::F2Matrix;

namespace {

F2Matrix random_square(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    F2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1U)
                m.set(r, c);
    return m;
}

void BM_Rank(benchmark::State& state)
{
    const auto m = random_square(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::gf2::rank(m));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(64, 1024);

void BM_Kernel(benchmark::State& state)
{
    auto m = random_square(static_cast<std::size_t>(state.range(0)), 43);
    // Half rank, so the kernel is large.
    for (std::size_t r = m.rows() / 2; r < m.rows(); ++r)
        m.row(r) = m.row(r - m.rows() / 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(etass::gf2::kernel_basis(m));
}
BENCHMARK(BM_Kernel)->RangeMultiplier(2)->Range(64, 512);

} // namespace
