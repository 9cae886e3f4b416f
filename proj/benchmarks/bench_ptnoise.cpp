#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "ptnoise/compose.hpp"
#include "ptnoise/quantize.hpp"
#include "ptnoise/spectrum.hpp"

using namespace ptnoise;

namespace {

RegionModel multimode(int n) {
  std::vector<double> nr(n), k(n);
  for (int j = 0; j < n; ++j) {
    nr[j] = 1.0 + 0.05 * j;
    k[j] = 0.02 + 0.01 * (j % 5);
  }
  return RegionModel::multimode(nr, k, 1.0, 3);
}

void BM_StarCompose(benchmark::State& state) {
  const auto m = multimode(static_cast<int>(state.range(0)));
  const auto a = evaluate(m, 1.3);
  const auto b = evaluate(pt_partner(m), 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(star_compose(a, b));
}
BENCHMARK(BM_StarCompose)->RangeMultiplier(2)->Range(1, 32);

void BM_BuildNoiseSystem(benchmark::State& state) {
  const auto m = multimode(static_cast<int>(state.range(0)));
  const auto p = pt_partner(m);
  for (auto _ : state) benchmark::DoNotOptimize(build_noise_system(m, p, 0.1, 1.3));
}
BENCHMARK(BM_BuildNoiseSystem)->RangeMultiplier(2)->Range(1, 32);

void BM_BallisticSpectrum(benchmark::State& state) {
  const auto m = RegionModel::ballistic(1.0, 0.05, 1.0);
  const auto grid = uniform_grid(1.0, 2.2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(emission_spectrum(m, pt_partner(m), 0.1, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BallisticSpectrum)->Arg(600)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SpectrumJobs(benchmark::State& state) {
  const auto m = multimode(8);
  const auto grid = uniform_grid(0.5, 3.0, 4000);
  SpectrumOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(emission_spectrum(m, pt_partner(m), 0.1, grid, opts));
}
BENCHMARK(BM_SpectrumJobs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_FindBoundStates(benchmark::State& state) {
  const auto slab = RegionModel::slab(1.0, 0.05, 1.0, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(find_bound_states(slab, 0.1, 10.0, 1e-3));
}
BENCHMARK(BM_FindBoundStates)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
