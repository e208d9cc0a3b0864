#include <benchmark/benchmark.h>

#include <memory>
#include <utility>
#include <vector>

#include "rwadic/cocycle.hpp"
#include "rwadic/measures.hpp"
#include "rwadic/spectral.hpp"
#include "rwadic/transition_system.hpp"

namespace {

using namespace rwadic;

std::shared_ptr<const TransitionSystem> golden() {
    return std::make_shared<TransitionSystem>(std::vector<std::vector<int>>{{1, 1}, {1, 0}});
}

Cocycle first_symbol(std::shared_ptr<const TransitionSystem> ts) {
    GroupSpec spec{1, 1};
    std::vector<std::pair<Word, GroupElement>> entries;
    for (Symbol s = 0; s < ts->alphabet_size(); ++s) {
        GroupElement g = GroupElement::zero(spec);
        g.lattice[0] = s;
        entries.emplace_back(Word{s}, g);
    }
    return Cocycle(std::move(ts), spec, 1, std::move(entries));
}

void BM_GammaSeries(benchmark::State& state) {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    MeasurePair m = make_measures(ts);
    TransferData td = build_transfer(f, m);
    for (auto _ : state) benchmark::DoNotOptimize(gamma_series(td));
}
BENCHMARK(BM_GammaSeries);

void BM_GammaHessian(benchmark::State& state) {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    MeasurePair m = make_measures(ts);
    TransferData td = build_transfer(f, m);
    for (auto _ : state) benchmark::DoNotOptimize(gamma_hessian(td));
}
BENCHMARK(BM_GammaHessian);

void BM_NagaevLambda(benchmark::State& state) {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    MeasurePair m = make_measures(ts);
    TransferData td = build_transfer(f, m);
    for (auto _ : state) benchmark::DoNotOptimize(nagaev_lambda(td, {0.3}));
}
BENCHMARK(BM_NagaevLambda);

void BM_ExactDistribution(benchmark::State& state) {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    MeasurePair m = make_measures(ts);
    for (auto _ : state) benchmark::DoNotOptimize(exact_fn_distribution(f, m, state.range(0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactDistribution)->Arg(256)->Arg(1024)->Arg(4096)->Complexity();

void BM_FiberCounts(benchmark::State& state) {
    auto ts = golden();
    Cocycle f = first_symbol(ts);
    for (auto _ : state) benchmark::DoNotOptimize(fiber_fn_counts(f, state.range(0), {0}));
}
BENCHMARK(BM_FiberCounts)->Arg(12)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
