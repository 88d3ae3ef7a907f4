#include <benchmark/benchmark.h>

#include "rdmlab/conditions.hpp"
#include "rdmlab/correlation.hpp"

using namespace rdmlab;

namespace {

AdmissiblePair sample_pair(int n, int N) {
  const BasisPtr b = build_basis(n);
  Rng rng(7, "bench_pair");
  return make_pair(random_mixed(b, N, 2, rng), N);
}

}  // namespace

static void BM_RunConditions(benchmark::State& state) {
  const AdmissiblePair pair = sample_pair(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    const ConditionReport rep = run_conditions(pair, 1e-9);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_RunConditions)->Arg(6)->Arg(8)->Arg(10);

static void BM_GConditionMatrix(benchmark::State& state) {
  const AdmissiblePair pair = sample_pair(static_cast<int>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(g_condition_matrix(pair.gamma, pair.Gamma));
}
BENCHMARK(BM_GConditionMatrix)->Arg(6)->Arg(8)->Arg(10);

static void BM_MainTheoremCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const AdmissiblePair pair = sample_pair(n, 3);
  Rng rng(9, "bench_corr");
  const Mat X = random_projection(n, n / 2, rng);
  for (auto _ : state) {
    const CorrelationReport rep =
        main_theorem_check(X, pair.gamma, pair.Gamma);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_MainTheoremCheck)->Arg(6)->Arg(8)->Arg(10);

BENCHMARK_MAIN();
