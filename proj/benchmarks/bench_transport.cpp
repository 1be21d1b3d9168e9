#include <benchmark/benchmark.h>

#include "ym/measure.hpp"
#include "ym/rng.hpp"
#include "ym/transport.hpp"

namespace {

ym::ProbabilityMeasure random_measure(ym::Rng& rng, int dim, int atoms) {
    std::vector<ym::Atom> list;
    list.reserve(static_cast<std::size_t>(atoms));
    for (int i = 0; i < atoms; ++i)
        list.push_back({rng.point_in_box(dim, -10.0, 10.0), rng.uniform(0.1, 1.0)});
    return ym::normalize(ym::DiscreteMeasure(dim, std::move(list)));
}

void W1Exact(benchmark::State& state) {
    ym::Rng rng(42);
    const int n = static_cast<int>(state.range(0));
    const ym::ProbabilityMeasure mu = random_measure(rng, 2, n);
    const ym::ProbabilityMeasure nu = random_measure(rng, 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ym::w1_exact(mu, nu).distance);
    }
    state.SetComplexityN(n);
}
BENCHMARK(W1Exact)->RangeMultiplier(2)->Range(16, 1024)->Complexity();

void W1Sweep1D(benchmark::State& state) {
    ym::Rng rng(43);
    const int n = static_cast<int>(state.range(0));
    const ym::ProbabilityMeasure mu = random_measure(rng, 1, n);
    const ym::ProbabilityMeasure nu = random_measure(rng, 1, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ym::w1_1d(mu, nu));
    }
    state.SetComplexityN(n);
}
BENCHMARK(W1Sweep1D)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

} // namespace
