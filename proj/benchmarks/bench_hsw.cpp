#include <benchmark/benchmark.h>

#include "hsw/properties.hpp"

using namespace hsw;

// exact rank over Q; entries grow during elimination, so this is the cost everything else pays
static void BM_RationalRank(benchmark::State& state) {
  Rng rng(1);
  int n = static_cast<int>(state.range(0));
  Matrix a = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rank(a));
  state.SetComplexityN(n);
}
BENCHMARK(BM_RationalRank)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void BM_CrossedModuleCheck(benchmark::State& state) {
  Rng rng(2);
  CrossedModule cm = random_crossed_module(rng, {-3, 3, static_cast<int>(state.range(0))});
  for (auto _ : state) benchmark::DoNotOptimize(check_crossed_module(cm).ok());
}
BENCHMARK(BM_CrossedModuleCheck)->DenseRange(1, 3);

static void BM_DglaCheck(benchmark::State& state) {
  Rng rng(3);
  Dgla g = associated_dgla(random_crossed_module(rng, {-3, 3, 3}));
  for (auto _ : state) benchmark::DoNotOptimize(check_dgla(g).ok());
}
BENCHMARK(BM_DglaCheck);

static void BM_LpCohomology(benchmark::State& state) {
  Rng rng(4);
  MCElement m = random_mc(rng, random_mc_crossed_module(rng));
  for (auto _ : state) benchmark::DoNotOptimize(lp_cohomology(m));
}
BENCHMARK(BM_LpCohomology);

static void BM_GroupoidCohomology(benchmark::State& state) {
  Rng rng(5);
  FiniteGroupoid g = random_groupoid(rng, 6, 30);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_dims(g, static_cast<int>(state.range(0))));
  state.counters["arrows"] = g.n_arr;
}
BENCHMARK(BM_GroupoidCohomology)->DenseRange(1, 3);

static void BM_VbCochainHomotopy(benchmark::State& state) {
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(prop_vb_cochain_homotopy(rng).ok());
}
BENCHMARK(BM_VbCochainHomotopy)->Unit(benchmark::kMillisecond);

// one conjugation-model point: quasi-Poisson identities, rank, non-degeneracy, one twist
static void BM_AmmPoint(benchmark::State& state) {
  Rng rng(7);
  MatrixLieAlgebra g = sl2();
  for (auto _ : state) benchmark::DoNotOptimize(amm_property(g, rng, 1, 1).report.ok());
}
BENCHMARK(BM_AmmPoint)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
