#include <benchmark/benchmark.h>

#include <memory>
#include <utility>
#include <vector>

#include "rwadic/adic.hpp"
#include "rwadic/cocycle.hpp"
#include "rwadic/harness.hpp"
#include "rwadic/point.hpp"
#include "rwadic/transition_system.hpp"

namespace {

using namespace rwadic;

std::shared_ptr<const TransitionSystem> full2() {
    return std::make_shared<TransitionSystem>(std::vector<std::vector<int>>{{1, 1}, {1, 1}});
}

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

void BM_WalkerStepFull2(benchmark::State& state) {
    auto ts = full2();
    OrbitWalker w(ts, Point::exact(ts, {}, {0}));
    for (auto _ : state) w.step();
    benchmark::DoNotOptimize(w.steps());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalkerStepFull2);

void BM_WalkerStepGolden(benchmark::State& state) {
    auto ts = golden();
    OrbitWalker w(ts, Point::exact(ts, {}, {0}));
    for (auto _ : state) w.step();
    benchmark::DoNotOptimize(w.steps());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalkerStepGolden);

void BM_WalkerStepTracking(benchmark::State& state) {
    auto ts = full2();
    Cocycle f = first_symbol(ts);
    OrbitWalker w(f, Point::exact(ts, {}, {0}));
    std::int64_t zeros = 0;
    for (auto _ : state) {
        w.step();
        zeros += w.position().is_zero() ? 1 : 0;
    }
    benchmark::DoNotOptimize(zeros);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_WalkerStepTracking);

void BM_SuccessorMaterialize(benchmark::State& state) {
    auto ts = full2();
    Point x = Point::exact(ts, Word(static_cast<std::size_t>(state.range(0)), 0), {0});
    for (auto _ : state) benchmark::DoNotOptimize(successor(x));
}
BENCHMARK(BM_SuccessorMaterialize)->Arg(16)->Arg(64)->Arg(256);

void BM_BlockQuantities(benchmark::State& state) {
    auto ts = golden();
    Point x = Point::exact(ts, Word(static_cast<std::size_t>(state.range(0)), 0), {0});
    for (auto _ : state) benchmark::DoNotOptimize(block_quantities(x, state.range(0)));
}
BENCHMARK(BM_BlockQuantities)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
