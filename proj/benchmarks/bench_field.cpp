#include <benchmark/benchmark.h>

#include "frax/carleson.hpp"
#include "frax/catalog.hpp"
#include "frax/field.hpp"
#include "frax/functionals.hpp"

namespace {

frax::GridSpec grid(int n, int N, int t_count) {
  frax::GridSpec g;
  g.n = n;
  g.half_width = 16.0;
  g.points = N;
  g.t_count = t_count;
  return g;
}

void BM_Extend1D(benchmark::State& state) {
  const auto g = grid(1, static_cast<int>(state.range(0)), 49);
  const auto f = frax::sample_catalog("gaussian", g);
  frax::Params prm;
  prm.s = 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(frax::extend(f, prm).values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()) * g.t_count);
}
BENCHMARK(BM_Extend1D)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Extend2D(benchmark::State& state) {
  const auto g = grid(2, static_cast<int>(state.range(0)), 25);
  const auto f = frax::sample_catalog("gaussian", g);
  frax::Params prm;
  prm.n = 2;
  prm.s = 0.8;
  for (auto _ : state) benchmark::DoNotOptimize(frax::extend(f, prm).values.data());
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()) * g.t_count);
}
BENCHMARK(BM_Extend2D)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_FracLaplacian3D(benchmark::State& state) {
  const auto g = grid(3, static_cast<int>(state.range(0)), 2);
  const auto f = frax::sample_catalog("gaussian", g);
  for (auto _ : state) benchmark::DoNotOptimize(frax::frac_laplacian(f, 0.6).values.data());
}
BENCHMARK(BM_FracLaplacian3D)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_BesovSeminorm(benchmark::State& state) {
  const auto g = grid(1, static_cast<int>(state.range(0)), 2);
  const auto f = frax::sample_catalog("bump", g);
  for (auto _ : state) benchmark::DoNotOptimize(frax::besov_seminorm(f, 0.5, 1.5, 2.0));
}
BENCHMARK(BM_BesovSeminorm)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_ConditionVi(benchmark::State& state) {
  frax::DiscreteMeasure mu;
  mu.n = 1;
  const int half = static_cast<int>(state.range(0));
  for (int x = -half; x <= half; ++x) mu.atoms.push_back({{static_cast<double>(x), 0.0, 0.0}, 1.0, 1.0});
  const frax::CapacityParams cp{1.0, 1.0, 3.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(frax::condition_vi(mu, cp).sup);
}
BENCHMARK(BM_ConditionVi)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
