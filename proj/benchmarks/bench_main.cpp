#include <benchmark/benchmark.h>

#include <random>

#include "shc/class_groups.hpp"
#include "shc/equidist_stats.hpp"
#include "shc/hyperbolic.hpp"
#include "shc/sh_cycles.hpp"

using namespace shc;

static void BM_ClassGroup(benchmark::State& state) {
  const i64 d = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(narrow_class_group(d));
}
BENCHMARK(BM_ClassGroup)->Arg(1005)->Arg(10001)->Arg(99997);

static void BM_ReduceFD(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-50, 50), ly(-6, 1);
  std::vector<UHPoint> pts;
  for (int i = 0; i < 1024; ++i) pts.emplace_back(x(rng), std::pow(10.0, ly(rng)));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reduce_to_fundamental_domain(pts[i++ & 1023]));
}
BENCHMARK(BM_ReduceFD);

static void BM_Compose(benchmark::State& state) {
  NarrowClassGroup G = narrow_class_group(state.range(0));
  const auto& cl = G.classes();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose(cl[i % cl.size()], cl[(3 * i + 1) % cl.size()]));
    ++i;
  }
}
BENCHMARK(BM_Compose)->Arg(10001)->Arg(99997);

// canonical points of one cycle, 100 samples
static void BM_Walker(benchmark::State& state) {
  auto cycles = build_cycles(field_from_discriminant(state.range(0)), 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_points(cycles[0], 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_Walker)->Arg(5)->Arg(2021)->Arg(9941);

static void BM_TheoremASmall(benchmark::State& state) {
  BoxPartition P = default_partition();
  for (auto _ : state) benchmark::DoNotOptimize(theorem_a_report(3, 100, 1000, P));
}
BENCHMARK(BM_TheoremASmall)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
