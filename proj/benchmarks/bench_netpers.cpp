#include <benchmark/benchmark.h>

#include "netpers/graph_persistence.hpp"
#include "netpers/metrics.hpp"
#include "netpers/poset.hpp"
#include "support/generators.hpp"

namespace {

using namespace netpers;

Filtration sample_filtration(int vertices, int criticals, double density) {
  testing::Rng rng(static_cast<std::uint64_t>(vertices * 131 + criticals));
  return Filtration(testing::random_graph(
      rng, {.min_vertices = vertices, .max_vertices = vertices, .max_criticals = criticals, .density = density}));
}

PropertySpec spec_for(int index) {
  switch (index) {
    case 0: return PropertySpec::components();
    case 1: return PropertySpec::clique(3);
    case 2: return PropertySpec::vertex_block(2);
    case 3: return PropertySpec::vertex_block(3);
    default: return PropertySpec::edge_block(2);
  }
}

// Args: property index, vertex count.
void BM_Tabulate(benchmark::State& state) {
  const PropertySpec spec = spec_for(static_cast<int>(state.range(0)));
  const Filtration f = sample_filtration(static_cast<int>(state.range(1)), 8, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(persistence_function(f, spec));
  state.SetLabel(spec.describe());
}
BENCHMARK(BM_Tabulate)->ArgsProduct({{0, 1, 2, 3, 4}, {16, 32, 64}})->Unit(benchmark::kMicrosecond);

void BM_TabulateThreads(benchmark::State& state) {
  const Filtration f = sample_filtration(48, 24, 0.3);
  const EngineOptions options{.threads = static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(persistence_function(f, PropertySpec::vertex_block(2), options));
}
BENCHMARK(BM_TabulateThreads)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Bottleneck(benchmark::State& state) {
  testing::Rng rng(7);
  const int points = static_cast<int>(state.range(0));
  // Equal half-line counts, so the finite matching is actually solved.
  auto sample = [&] {
    for (;;) {
      Diagram d = testing::random_diagram(rng, points, 1, false);
      if (d.infinite_count() == 1) return d;
    }
  };
  const Diagram a = sample();
  const Diagram b = sample();
  for (auto _ : state) benchmark::DoNotOptimize(bottleneck_distance(a, b));
}
BENCHMARK(BM_Bottleneck)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMicrosecond);

void BM_UniversalPseudodistance(benchmark::State& state) {
  testing::Rng rng(9);
  const Diagram d1 = testing::random_realizable_diagram(rng, 5);
  const Diagram d2 = testing::random_realizable_diagram(rng, 5);
  const auto pair = build_universal_pair(d1, d2);
  const WeightedGraph g1 = t_n_filtration(pair.first, 3);
  const WeightedGraph g2 = t_n_filtration(pair.second, 3);
  for (auto _ : state) benchmark::DoNotOptimize(natural_pseudodistance(g1, g2, 40));
}
BENCHMARK(BM_UniversalPseudodistance)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
