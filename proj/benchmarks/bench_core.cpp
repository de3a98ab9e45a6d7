#include "capitulab/abgroup.hpp"
#include "capitulab/captrace.hpp"
#include "capitulab/cubf.hpp"
#include "capitulab/cyclo.hpp"
#include "capitulab/intmatrix.hpp"
#include "capitulab/quadf.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace capitulab;

static void BM_SmithDiagonal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<long>(rng() % 41) - 20;
  for (auto _ : state) benchmark::DoNotOptimize(smith_diagonal(m));
}
BENCHMARK(BM_SmithDiagonal)->Arg(4)->Arg(8)->Arg(16);

static void BM_SubgroupFromRows(benchmark::State& state) {
  const abgroup::FinAbGroup G({48, 16, 2, 2});
  const std::vector<std::vector<Integer>> rows{{12, 0, 0, 1}, {12, 0, 1, 0}, {6, 4, 1, 1}, {0, 8, 0, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(abgroup::subgroup_from_rows(G, rows).order());
}
BENCHMARK(BM_SubgroupFromRows);

static void BM_QuadClassGroup(benchmark::State& state) {
  const Integer m(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(quadf::class_group(m).wide.order());
}
BENCHMARK(BM_QuadClassGroup)->Arg(1129)->Arg(32009)->Arg(119029)->Unit(benchmark::kMillisecond);

static void BM_CubicConductors(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cubf::enumerate_conductors(7, state.range(0)).size());
}
BENCHMARK(BM_CubicConductors)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_CyclotomicUnitExponent(benchmark::State& state) {
  const Integer f(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cyclo::cyclotomic_unit_exponent(f).exponent);
}
BENCHMARK(BM_CyclotomicUnitExponent)->Arg(229)->Arg(457)->Unit(benchmark::kMillisecond);

static void BM_NormRelation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cyclo::verify_norm_relation(195, 15).holds);
}
BENCHMARK(BM_NormRelation)->Unit(benchmark::kMillisecond);

static void BM_AnalyzeRecord(benchmark::State& state) {
  captrace::TowerRecord r;
  r.label = 2817;
  r.p = 2;
  r.ell = 449;
  r.N = 2;
  r.n = 1;
  r.CK = abgroup::FinAbGroup({12, 4});
  r.CKn = abgroup::FinAbGroup({24, 8, 2, 2});
  r.nu_rows = {{12, 0, 0, 1}, {12, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
  for (auto _ : state) benchmark::DoNotOptimize(captrace::analyze(r).ker_order);
}
BENCHMARK(BM_AnalyzeRecord);
BENCHMARK_MAIN();
