#include <benchmark/benchmark.h>

#include "limset/approx_sets.hpp"
#include "limset/arith.hpp"
#include "limset/montecarlo.hpp"
#include "limset/psi.hpp"
#include "limset/rng.hpp"
#include "limset/targets.hpp"
#include "limset/torus_geom.hpp"

using namespace limset;

namespace {

TorusRegion lattice_region(long long d, int m) {
  ApproxSet a = make_approx_set(IntVec(1, d), Rat(1, 3), TargetFamily::full_lattice(m),
                                1, m);
  return to_one_by_m(a);
}

void BM_RegionMeasure1D(benchmark::State& state) {
  TorusRegion r = lattice_region(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(region_measure(r));
}
BENCHMARK(BM_RegionMeasure1D)->Arg(16)->Arg(64)->Arg(256);

void BM_RegionMeasure2D(benchmark::State& state) {
  TorusRegion r = lattice_region(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(region_measure(r));
}
BENCHMARK(BM_RegionMeasure2D)->Arg(8)->Arg(16)->Arg(32);

void BM_RegionIntersect1D(benchmark::State& state) {
  TorusRegion a = lattice_region(state.range(0), 1);
  TorusRegion b = lattice_region(state.range(0) - 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(region_intersect_measure(a, b));
}
BENCHMARK(BM_RegionIntersect1D)->Arg(32)->Arg(128);

void BM_PsiTransformTable(benchmark::State& state) {
  std::map<IntVec, Rat> table;
  CounterRng rng(5, 0, 0);
  while (table.size() < static_cast<std::size_t>(state.range(0))) {
    IntVec q{static_cast<long long>(rng.next_u64() % 30),
             static_cast<long long>(rng.next_u64() % 30)};
    if (q[0] == 0 && q[1] == 0) continue;
    table[q] = Rat(1 + static_cast<long long>(rng.next_u64() % 50), 50);
  }
  ApproxFunction f = ApproxFunction::finite_support(2, std::move(table));
  for (auto _ : state) benchmark::DoNotOptimize(psi_transform(f, 1, 1, 30));
}
BENCHMARK(BM_PsiTransformTable)->Arg(16)->Arg(64);

void BM_TailUnionSampling(benchmark::State& state) {
  ApproxFunction ray = ApproxFunction::ray({1, 0}, PowerLaw{Rat(1, 20), 0});
  TargetFamily fam = TargetFamily::half_cube(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tail_union_estimate(ray, fam, 2, 1, 51, 150, state.range(0), 7, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TailUnionSampling)->Arg(10000)->Arg(50000);

void BM_Totient(benchmark::State& state) {
  for (auto _ : state) {
    long long acc = 0;
    for (long long d = 1; d <= state.range(0); ++d) acc += totient(d);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_Totient)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
