#include <benchmark/benchmark.h>

#include "bergman/criteria.hpp"
#include "bergman/grid.hpp"
#include "bergman/spaces.hpp"
#include "bergman/weights.hpp"

namespace {

using namespace bergman;

void BM_GridBuild(benchmark::State& state) {
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        QuadratureGrid grid(level);
        benchmark::DoNotOptimize(grid.size());
    }
    state.counters["nodes"] = static_cast<double>(grid_size(level));
}
BENCHMARK(BM_GridBuild)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_BergmanNorm(benchmark::State& state) {
    const auto grid = make_grid(static_cast<int>(state.range(0)));
    const auto w = RadialWeight::power(1.0);
    const auto f = test_function(DiscPoint::from_gap(1.0 / 64, 0.3), 6.0, 2.0, w);
    for (auto _ : state) benchmark::DoNotOptimize(bergman_norm(f, 2.0, w, *grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid->size()));
}
BENCHMARK(BM_BergmanNorm)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_WeightClassify(benchmark::State& state) {
    const auto w = RadialWeight::log_power(1.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(classify(w).dhat_constant);
}
BENCHMARK(BM_WeightClassify)->Unit(benchmark::kMillisecond);

void BM_EmbeddingSup(benchmark::State& state) {
    const auto grid = make_grid(10);
    const auto w = RadialWeight::power(0.0);
    const auto mu = DiscMeasure::power_density(1.3, grid);
    const Sweep sweep{static_cast<int>(state.range(0)), 0.5, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(embedding_sup_criterion(1.0, 2.0, 0, w, mu, 0.5, sweep).value);
    }
}
BENCHMARK(BM_EmbeddingSup)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BerezinSweep(benchmark::State& state) {
    const auto w = RadialWeight::power(0.0);
    const auto nu = RadialWeight::power(0.3);
    const int level = static_cast<int>(state.range(0));
    make_grid(level);
    make_grid(level + 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            berezin_criterion(OperatorSpec{}, 1.0, 1.0, w, nu, 6.0, Sweep{level}, level).value);
    }
}
BENCHMARK(BM_BerezinSweep)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
