#include <benchmark/benchmark.h>

#include "rdmlab/rdm.hpp"

using namespace rdmlab;

static void BM_BuildBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    FockBasis basis(n);
    benchmark::DoNotOptimize(basis.dim());
  }
}
BENCHMARK(BM_BuildBasis)->Arg(8)->Arg(10)->Arg(12);

static void BM_Creation(benchmark::State& state) {
  const BasisPtr b = build_basis(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const FockOperator c = creation(0, b);
    benchmark::DoNotOptimize(c.matrix.nonZeros());
  }
}
BENCHMARK(BM_Creation)->Arg(8)->Arg(10)->Arg(12);

static void BM_OnePdm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BasisPtr b = build_basis(n);
  Rng rng(1, "bench_one_pdm");
  const DensityMatrix rho = random_mixed(b, 3, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(one_pdm(rho));
}
BENCHMARK(BM_OnePdm)->Arg(6)->Arg(8)->Arg(10);

static void BM_TwoPdm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BasisPtr b = build_basis(n);
  Rng rng(1, "bench_two_pdm");
  const DensityMatrix rho = random_mixed(b, 3, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(two_pdm(rho));
}
BENCHMARK(BM_TwoPdm)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
