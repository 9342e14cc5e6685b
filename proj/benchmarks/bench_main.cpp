#include <benchmark/benchmark.h>

#include "graphcat/corpus.hpp"
#include "graphcat/segal.hpp"

using namespace graphcat;

static void BM_EmbPosetStar(benchmark::State& state) {
  Graph g = star(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EmbPoset(g).size());
}
BENCHMARK(BM_EmbPosetStar)->DenseRange(1, 6);

static void BM_EmbPosetCycle(benchmark::State& state) {
  Graph g = cycle_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(EmbPoset(g).size());
}
BENCHMARK(BM_EmbPosetCycle)->DenseRange(1, 4);

static void BM_EnumerateMapsLine(benchmark::State& state) {
  Graph s = line_graph(static_cast<int>(state.range(0)));
  Graph t = line_graph(3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_maps(s, t, Mode::plain).size());
}
BENCHMARK(BM_EnumerateMapsLine)->DenseRange(1, 3);

static void BM_CatalogBuild(benchmark::State& state) {
  auto kind = static_cast<CategoryKind>(state.range(0));
  auto base = catalog_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(Catalog::build(kind, base).num_morphisms());
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_CatalogBuild)
    ->Arg(static_cast<int>(CategoryKind::tree))
    ->Arg(static_cast<int>(CategoryKind::u))
    ->Arg(static_cast<int>(CategoryKind::dendroidal))
    ->Unit(benchmark::kMillisecond);

static void BM_CheckSegal(benchmark::State& state) {
  Catalog c = Catalog::build(CategoryKind::u, catalog_corpus());
  Presheaf x = random_segal_presheaf(c, 3);
  for (auto _ : state) benchmark::DoNotOptimize(is_segal(c, x));
}
BENCHMARK(BM_CheckSegal)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
