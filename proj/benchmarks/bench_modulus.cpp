#include <benchmark/benchmark.h>

#include "combmod/lattice.hpp"
#include "combmod/modulus.hpp"
#include "combmod/pipeline.hpp"
#include "combmod/sigma.hpp"
#include "combmod/t3.hpp"

using namespace combmod;

// Frontier modulus of T3 balls; the chain family grows like 2^r.
static void BM_T3Frontier(benchmark::State& state) {
    auto t = build_t3_ball(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(modulus(t.graph, ChainFamilySpec::to_frontier({t.base}), 1e-9));
    state.counters["vertices"] = static_cast<double>(t.graph.size());
}
BENCHMARK(BM_T3Frontier)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

static void BM_GridFrontier(benchmark::State& state) {
    Graph box = build_grid_box(static_cast<int>(state.range(0)));
    const Index origin = box.index("z:0:0");
    for (auto _ : state) benchmark::DoNotOptimize(modulus(box, ChainFamilySpec::to_frontier({origin}), 1e-9));
    state.counters["vertices"] = static_cast<double>(box.size());
}
BENCHMARK(BM_GridFrontier)->Arg(4)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SigmaFrontier(benchmark::State& state) {
    auto tree = build_keyl_tree({1, 1, 2, 2, 3});
    auto s = build_sigma(tree, static_cast<int>(state.range(0)));
    const Index v0 = s.tree(tree.base);
    for (auto _ : state) benchmark::DoNotOptimize(modulus(s.graph, ChainFamilySpec::to_frontier({v0}), 1e-8));
    state.counters["vertices"] = static_cast<double>(s.graph.size());
}
BENCHMARK(BM_SigmaFrontier)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_BruteForceSmall(benchmark::State& state) {
    Graph p = build_lattice(LatticeKind::half_cylinder(4), 2, 0);
    const auto spec = ChainFamilySpec::to_frontier({p.index("z:0:0")});
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_modulus(p, spec));
}
BENCHMARK(BM_BruteForceSmall)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
