#include <benchmark/benchmark.h>

#include "gibbs/conversion.hpp"
#include "gibbs/dlr.hpp"
#include "gibbs/fixtures.hpp"

using namespace gibbs;
namespace fx = gibbs::fixtures;

static void BM_BallFreeGroup(benchmark::State& state)
{
    const Group f2(GroupSpec::parse("F2"));
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ball(f2, k));
    }
}
BENCHMARK(BM_BallFreeGroup)->Arg(6)->Arg(8)->Arg(10);

static void BM_BallHeisenberg(benchmark::State& state)
{
    const Group h3(GroupSpec::parse("H3"));
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ball(h3, k));
    }
}
BENCHMARK(BM_BallHeisenberg)->Arg(6)->Arg(10);

static void BM_FillingsGoldenMean(benchmark::State& state)
{
    const auto sft = fx::golden_mean();
    const auto region = fx::interval(0, state.range(0) - 1);
    const auto boundary = constant_boundary(fx::integers(), region, 1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_fillings(sft, region, boundary, Admissibility::Exact1D));
    }
}
BENCHMARK(BM_FillingsGoldenMean)->Arg(8)->Arg(12)->Arg(16);

static void BM_KernelIsing(benchmark::State& state)
{
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const CocycleSource src(fx::ising_chain(0.5));
    const auto region = fx::interval(0, state.range(0) - 1);
    const auto boundary = constant_boundary(fx::integers(), region, 1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dlr_kernel(src, sft, region, boundary));
    }
}
BENCHMARK(BM_KernelIsing)->Arg(4)->Arg(8)->Arg(12);

static void BM_KernelPlaquette(benchmark::State& state)
{
    const auto z2 = fx::square_lattice();
    const auto sft = fx::full_shift(z2, fx::spins());
    const auto phi = fx::plaquette();
    const CocycleSource src(phi);
    std::vector<Element> box;
    for (std::int64_t i = 0; i < 3; ++i)
        for (std::int64_t j = 0; j < 3; ++j) box.push_back(Element{i, j});
    const auto boundary = constant_boundary(z2, box, phi.range(), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dlr_kernel(src, sft, box, boundary));
    }
}
BENCHMARK(BM_KernelPlaquette);

static void BM_Glauber(benchmark::State& state)
{
    const auto sft = fx::full_shift(fx::integers(), fx::spins());
    const CocycleSource src(fx::ising_chain(1.0));
    const auto region = fx::interval(0, 5);
    const auto boundary = constant_boundary(fx::integers(), region, 1, 1);
    const auto steps = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(glauber_chain(src, sft, region, boundary, steps, 1));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}
BENCHMARK(BM_Glauber)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_SameCocycle(benchmark::State& state)
{
    const auto phi = fx::golden_site_bond();
    const auto sft = fx::golden_mean();
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_same_cocycle(phi, sft, WeightScheme::uniform(), WeightScheme::dictator(), 200, 1));
    }
}
BENCHMARK(BM_SameCocycle)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
