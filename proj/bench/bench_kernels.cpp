// Serial reference against the OpenMP path for each data-parallel kernel.
// Both paths produce identical results; only wall time differs.

#include <benchmark/benchmark.h>

#include <vector>

#include "infolab/boolean_analysis.hpp"
#include "infolab/boolean_search.hpp"
#include "infolab/perfect_code.hpp"
#include "infolab/rng.hpp"
#include "infolab/sphere_ops.hpp"

using namespace infolab;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void BM_Fwht(benchmark::State& state) {
  std::vector<double> base(std::size_t{1} << 20);
  CounterRng rng(1);
  for (double& x : base) x = rng.uniform();
  for (auto _ : state) {
    auto a = base;
    kernels::fwht(a, mode(state));
    benchmark::DoNotOptimize(a.data());
  }
}
BENCHMARK(BM_Fwht)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveN4(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_verify(4, 0.1, mode(state)).max_mi);
}
BENCHMARK(BM_ExhaustiveN4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PerfectCodeCoset(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(perfect_code_coset_entropy(1, 0.1, mode(state)));
}
BENCHMARK(BM_PerfectCodeCoset)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MultiOutputMi(benchmark::State& state) {
  CounterRng rng(2);
  std::vector<std::uint32_t> table(1u << 11);
  for (auto& v : table) v = static_cast<std::uint32_t>(rng.below(16));
  const MultiOutputFunction f(11, 4, table);
  for (auto _ : state) benchmark::DoNotOptimize(mutual_information_direct(f, 0.1, mode(state)));
}
BENCHMARK(BM_MultiOutputMi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PoissonMatvec(benchmark::State& state) {
  const auto set = circle_grid(4096);
  const KernelOperator op(set, KernelSpec::poisson(0.7, 2));
  std::vector<double> v(set->size());
  CounterRng rng(3);
  for (double& x : v) x = static_cast<double>(rng.below(2));
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(v, mode(state)).data());
}
BENCHMARK(BM_PoissonMatvec)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
