#include <benchmark/benchmark.h>

#include "matchlab/catalog.hpp"
#include "matchlab/gibbs.hpp"
#include "matchlab/glauber_edge.hpp"
#include "matchlab/glauber_vertex.hpp"
#include "matchlab/instances.hpp"
#include "matchlab/pm_count.hpp"
#include "matchlab/polynomial.hpp"
#include "matchlab/sparsify.hpp"
#include "matchlab/transport.hpp"

using namespace matchlab;

static void BM_MatchingPolynomialGrid(benchmark::State& state) {
  const Graph g = gen_grid(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(matching_polynomial(g));
}
BENCHMARK(BM_MatchingPolynomialGrid)->Arg(3)->Arg(4)->Arg(5);

static void BM_PolynomialRoots(benchmark::State& state) {
  const auto p = matching_polynomial(gen_grid(static_cast<int>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(polynomial_roots(p));
}
BENCHMARK(BM_PolynomialRoots)->Arg(3)->Arg(5);

// Throughput of the sampler used by the mixing experiment.
static void BM_EdgeGlauberHistogram(benchmark::State& state) {
  const Graph g = gen_grid(4, 2);
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_histogram(g, 1.0, steps, 64, 7));
  state.SetItemsProcessed(state.iterations() * 64 * static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_EdgeGlauberHistogram)->Arg(1000)->Arg(10000);

static void BM_EdgeChainGeneric(benchmark::State& state) {
  const Graph g = gen_grid(10, 10);
  EdgeChain chain(g, 1.0, Rng(3));
  for (auto _ : state) chain.run(1000);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_EdgeChainGeneric);

static void BM_CountFkt(benchmark::State& state) {
  const Graph g = gen_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_pm_fkt(g));
}
BENCHMARK(BM_CountFkt)->Arg(4)->Arg(6)->Arg(8);

static void BM_CountRyser(benchmark::State& state) {
  const Graph g = gen_random_bipartite(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(count_pm_ryser(g));
}
BENCHMARK(BM_CountRyser)->Arg(8)->Arg(12)->Arg(16);

static void BM_CountEnumerate(benchmark::State& state) {
  const Graph g = gen_grid(4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(count_pm_enumerate(g));
}
BENCHMARK(BM_CountEnumerate);

static void BM_VertexPipeline(benchmark::State& state) {
  const Graph g = gen_complete_bipartite(3, 3);
  PmCache cache(g, make_oracle(g));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_matching_vertex(g, 1.0, 0.01, cache, ++seed));
}
BENCHMARK(BM_VertexPipeline);

static void BM_WassersteinDeletion(benchmark::State& state) {
  const Graph g = gen_grid(3, 3);
  const auto a = exact_gibbs(g, 1.0);
  const auto b = exact_gibbs(remove_edge(g, 0), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(wasserstein_distance(g, a, b, Metric::kEdge));
}
BENCHMARK(BM_WassersteinDeletion);

static void BM_RegularizedLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Graph g = gen_random_bipartite(n / 2, n / 2, 4, 5);
  const Real alpha = 0.3L / std::log(static_cast<Real>(n));
  for (auto _ : state) benchmark::DoNotOptimize(solve_regularized_lp(g, alpha));
}
BENCHMARK(BM_RegularizedLp)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_Catalog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(connected_graph_catalog(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Catalog)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
