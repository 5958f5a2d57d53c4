#include <momentlab/calabi_flow.hpp>
#include <momentlab/group_actions.hpp>
#include <momentlab/holonomy.hpp>
#include <momentlab/random_fields.hpp>
#include <momentlab/spectral.hpp>

#include <benchmark/benchmark.h>

using namespace momentlab;

namespace {

Grid bench_grid(int n, int resolution) { return Grid(n, resolution); }

void BM_PartialDerivative(benchmark::State& state)
{
    const Grid grid = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    Rng rng(7);
    const ScalarField f = random_trig_field(grid, rng);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::partial_derivative(f, 0));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.point_count()));
}
BENCHMARK(BM_PartialDerivative)->Args({1, 64})->Args({1, 256})->Args({2, 16})->Args({2, 32});

void BM_ExteriorDerivative(benchmark::State& state)
{
    const Grid grid = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    Rng rng(11);
    const DifferentialForm a = random_form(grid, 1, rng);
    for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(a));
}
BENCHMARK(BM_ExteriorDerivative)->Args({1, 64})->Args({2, 16});

void BM_MomentPairing(benchmark::State& state)
{
    const Grid grid = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto bundle = BundleSetup::standard(grid);
    Rng rng(13);
    const RelativeConnection A(bundle, random_form(grid, 1, rng, TrigSpec{4, 2, 0.005, false}));
    const InvariantField eta{random_vector_field(grid, rng), random_trig_field(grid, rng)};
    for (auto _ : state) benchmark::DoNotOptimize(moment_pairing(A, eta));
}
BENCHMARK(BM_MomentPairing)->Args({1, 64})->Args({2, 16});

void BM_FlowStep(benchmark::State& state)
{
    const Grid grid = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto bundle = BundleSetup::standard(grid);
    std::vector<int> k(static_cast<std::size_t>(grid.dim()), 0);
    k[0] = 1;
    const auto theta = VolumeSpec::cosine_modes(grid, {{k, 0.3, 0.0}});
    const FlowState start = initial_state(*bundle, KahlerPotential::zero(*bundle), theta);
    const double dt = stable_time_step(grid, theta);
    for (auto _ : state) benchmark::DoNotOptimize(flow_step(*bundle, start, theta, dt));
}
BENCHMARK(BM_FlowStep)->Args({1, 32})->Args({1, 64})->Args({2, 16});

void BM_Holonomy(benchmark::State& state)
{
    using namespace momentlab::weinstein;
    const LoopSpec loop{{0.0, 0.0, 1.0}, static_cast<int>(state.range(0)), 0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(loop_holonomy(loop, 2));
}
BENCHMARK(BM_Holonomy)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
