#include <benchmark/benchmark.h>

#include "spinopt/brachistochrone.hpp"
#include "spinopt/closed_forms.hpp"
#include "spinopt/oracle.hpp"

using namespace spinopt;

namespace {

const DiracParameters kParams(0.7, {0.3, -0.4, 1.1});

void BM_ExpmInvolutory(benchmark::State& state) {
  const Matrix h = dirac_hamiltonian(kParams, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(expm_unitary(h, 0.9, ExpmPath::involutory));
}
BENCHMARK(BM_ExpmInvolutory);

void BM_ExpmEigen(benchmark::State& state) {
  const Matrix h = dirac_hamiltonian(kParams, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(expm_unitary(h, 0.9, ExpmPath::eigen));
}
BENCHMARK(BM_ExpmEigen);

void BM_ExpmEigenSu3(benchmark::State& state) {
  const Matrix h = su3_hamiltonian(0.4, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(expm_unitary(h, 0.9, ExpmPath::eigen));
}
BENCHMARK(BM_ExpmEigenSu3);

void BM_DiracRhs(benchmark::State& state) {
  const ControlSplit split = dirac_split();
  const OperatorPair pair{{0.7, 0.3, -0.4, 1.1}, std::vector<double>(11, 0.25), 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(brachistochrone_rhs(pair, split));
}
BENCHMARK(BM_DiracRhs);

void BM_TimeOrderedExponential(benchmark::State& state) {
  const UnitaryFamily f = su4_unitary_family(kParams);
  const HamiltonianSchedule sched(4, f.hamiltonian);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(time_ordered_exponential(sched, 0.0, 1.0, steps));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TimeOrderedExponential)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
