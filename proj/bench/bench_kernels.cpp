#include <benchmark/benchmark.h>

#include "rees/complex.hpp"
#include "rees/oracle.hpp"
#include "rees/sagbi.hpp"

using namespace rees;

namespace {

SimplicialComplex instance(int which) {
  switch (which) {
    case 0: return full_complex(2, 5);
    case 1: return full_complex(3, 5);
    default: return complex_from_cliques(3, 6, {{1, 2, 3, 4, 5}, {4, 5, 6}});
  }
}

void BM_KernelPhi(benchmark::State& state) {
  SimplicialComplex d = instance(static_cast<int>(state.range(0)));
  OracleOptions o;
  o.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(kernel_of_map(PresentationMap::Phi, d, o));
}

void BM_VerifySagbi(benchmark::State& state) {
  SimplicialComplex d = instance(static_cast<int>(state.range(0)));
  SagbiOptions o;
  o.parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify_sagbi(d, o));
}

}  // namespace

// Args: {instance, parallel}.
BENCHMARK(BM_KernelPhi)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySagbi)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
