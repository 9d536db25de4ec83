#include <benchmark/benchmark.h>

#include "subclassical/classical.hpp"
#include "subclassical/cp_map.hpp"
#include "subclassical/extension.hpp"
#include "subclassical/numerics.hpp"
#include "subclassical/sampling.hpp"
#include "subclassical/trajectories.hpp"

using namespace subclassical;

static void BM_Kron(benchmark::State& state) {
    SplitMix64 rng(1);
    const auto a = random_operator(state.range(0), rng);
    const auto b = random_operator(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(4)->Arg(8)->Arg(16);

static void BM_Matexp(benchmark::State& state) {
    SplitMix64 rng(2);
    const auto h = random_hermitian(state.range(0), rng);
    const auto gen = complexd(0.0, -1.0) * h;
    for (auto _ : state) benchmark::DoNotOptimize(matexp(gen, 1.0));
}
BENCHMARK(BM_Matexp)->Arg(4)->Arg(8)->Arg(16);

static void BM_HermitianEigenvalues(benchmark::State& state) {
    SplitMix64 rng(3);
    const auto h = random_hermitian(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(8)->Arg(16)->Arg(36);

static void BM_BuildDilation(benchmark::State& state) {
    SplitMix64 rng(4);
    const auto q = random_stochastic(state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(build_dilation(q));
}
BENCHMARK(BM_BuildDilation)->Arg(2)->Arg(4)->Arg(6);

static void BM_CanonicalExtension(benchmark::State& state) {
    SplitMix64 rng(5);
    const auto q = random_stochastic(state.range(0), rng);
    const Dilation d = build_dilation(q);
    for (auto _ : state) benchmark::DoNotOptimize(canonical_extension(d));
}
BENCHMARK(BM_CanonicalExtension)->Arg(2)->Arg(4)->Arg(6);

static void BM_Birkhoff(benchmark::State& state) {
    SplitMix64 rng(6);
    const std::size_t n = state.range(0);
    std::vector<std::vector<double>> r(n, std::vector<double>(n, 0.0));
    for (int k = 0; k < 5; ++k) {
        const FiniteBijection perm = random_bijection(n, rng);
        for (std::size_t x = 0; x < n; ++x) r[x][perm.forward(x)] += 0.2;
    }
    for (auto _ : state) benchmark::DoNotOptimize(birkhoff_decompose(r));
}
BENCHMARK(BM_Birkhoff)->Arg(4)->Arg(8)->Arg(16);

static void BM_TrajectoryBatch(benchmark::State& state) {
    const PhysicalExample ex = example_spontaneous_emission(1.0, 0.7);
    const ProbabilityVector mu = ProbabilityVector::uniform(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_one_step_batch(ex.bu, mu, state.range(0), 42));
}
BENCHMARK(BM_TrajectoryBatch)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
