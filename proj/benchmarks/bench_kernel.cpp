#include <benchmark/benchmark.h>

#include "frax/kernel.hpp"

namespace {

void BM_EvalG(benchmark::State& state) {
  const frax::LambdaRule rule{static_cast<int>(state.range(0))};
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frax::eval_G(0.7, r, rule));
    r = r < 20.0 ? r * 1.01 : 0.1;
  }
}
BENCHMARK(BM_EvalG)->Arg(100)->Arg(200)->Arg(400);

void BM_FourierSymbol(benchmark::State& state) {
  frax::Params prm;
  prm.n = 2;
  prm.s = 1.3;
  double xi = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frax::fourier_symbol(prm, 1.0, xi));
    xi = xi < 50.0 ? xi * 1.01 : 0.01;
  }
}
BENCHMARK(BM_FourierSymbol);

void BM_MomentConstant(benchmark::State& state) {
  frax::Params prm;
  prm.s = 0.6;
  for (auto _ : state) benchmark::DoNotOptimize(frax::moment_constant(prm, 0.4));
}
BENCHMARK(BM_MomentConstant)->Unit(benchmark::kMicrosecond);

void BM_EnergyConstants(benchmark::State& state) {
  frax::Params prm;
  prm.s = 1.4;
  prm.beta = 0.9;
  prm.gamma = 0.8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(frax::energy_constant_dt(prm));
    benchmark::DoNotOptimize(frax::energy_constant_grad(prm));
    benchmark::DoNotOptimize(frax::energy_constant_frac(prm));
  }
}
BENCHMARK(BM_EnergyConstants)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
