#include <benchmark/benchmark.h>

#include <random>

#include "vortexball/construction.hpp"
#include "vortexball/geometry.hpp"
#include "vortexball/lorentz.hpp"

using namespace vortexball;

namespace {

GridSpec square(std::size_t n) { return GridSpec{{-1.0, -1.0}, 2.0, 2.0, n, n}; }

std::vector<Ball> random_balls(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> pos(0.0, 10.0), rad(0.02, 0.3);
    std::vector<Ball> out(n);
    for (Ball& b : out) b = {{pos(rng), pos(rng)}, rad(rng), std::nullopt};
    return out;
}

void BM_Grow(benchmark::State& st) {
    const BallCollection c{random_balls(static_cast<std::size_t>(st.range(0)))};
    for (auto _ : st) benchmark::DoNotOptimize(grow(c, 1.5));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_Grow)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_SynthAndGradient(benchmark::State& st) {
    const GridSpec g = square(static_cast<std::size_t>(st.range(0)));
    const VortexSpec spec{{{{0.0, 0.0}, 1}, {{0.3, 0.2}, -1}}, 0.01};
    for (auto _ : st) {
        const ComplexField f = synth_field(spec, g);
        benchmark::DoNotOptimize(covariant_gradient(f));
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_SynthAndGradient)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LorentzStats(benchmark::State& st) {
    std::mt19937_64 rng(2);
    std::lognormal_distribution<double> d(0.0, 1.0);
    SampledMagnitudes m{std::vector<double>(static_cast<std::size_t>(st.range(0))), 1e-6};
    for (double& v : m.values) v = d(rng);
    for (auto _ : st) benchmark::DoNotOptimize(lorentz_stats(m));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LorentzStats)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Complexity(benchmark::oNLogN);

void BM_TwoPhaseConstruct(benchmark::State& st) {
    const ComplexField f = synth_field(VortexSpec{{{{0.0, 0.0}, 1}}, 0.01}, square(static_cast<std::size_t>(st.range(0))));
    const ConstructionParams p{0.5, 0.01, 0.5, 0.0};
    for (auto _ : st) benchmark::DoNotOptimize(two_phase_construct(f, p));
}
BENCHMARK(BM_TwoPhaseConstruct)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
