#include <benchmark/benchmark.h>

#include "ym/convergence.hpp"
#include "ym/graph.hpp"
#include "ym/rng.hpp"
#include "ym/varifold.hpp"

namespace {

ym::GraphMeasure random_graph(int atoms) {
    ym::Rng rng(7);
    std::vector<ym::GraphAtom> list;
    list.reserve(static_cast<std::size_t>(atoms));
    for (int i = 0; i < atoms; ++i)
        list.push_back({rng.point_in_box(2, -5.0, 5.0), rng.point_in_box(1, -5.0, 5.0),
                        rng.uniform(0.05, 1.0)});
    return ym::GraphMeasure(2, 1, std::move(list));
}

void DisintegrateRoundtrip(benchmark::State& state) {
    const ym::GraphMeasure gamma = random_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ym::build(ym::disintegrate(gamma).young).size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DisintegrateRoundtrip)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void ParallelLinesStep(benchmark::State& state) {
    const ym::PairsScenario scenario = ym::scenario_parallel_lines(50);
    int i = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scenario.step(i).varifold.size());
        i = i % 100 + 1;
    }
}
BENCHMARK(ParallelLinesStep);

void FirstVariationNGon(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<ym::Vec> vertices;
    vertices.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * 3.14159265358979323846 * k / n;
        vertices.push_back({std::cos(angle), std::sin(angle)});
    }
    const ym::PolylineVarifold ngon(std::move(vertices),
                                    std::vector<double>(static_cast<std::size_t>(n), 1.0),
                                    true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ym::first_variation_mass(ngon));
    }
    state.SetComplexityN(n);
}
BENCHMARK(FirstVariationNGon)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

} // namespace

BENCHMARK_MAIN();
