#include <benchmark/benchmark.h>

#include "sphereqmc/detproc.hpp"
#include "sphereqmc/energy.hpp"
#include "sphereqmc/polyzeros.hpp"
#include "sphereqmc/random.hpp"
#include "sphereqmc/wce.hpp"

using namespace sphereqmc;

static void BM_HkpvHarmonic(benchmark::State& state) {
  const detproc::HarmonicKernel k(2, static_cast<int>(state.range(0)));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(detproc::hkpv_sample(k, rng));
  state.counters["N"] = static_cast<double>(k.rank());
}
BENCHMARK(BM_HkpvHarmonic)->Arg(4)->Arg(8)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_HkpvSpherical(benchmark::State& state) {
  const detproc::SphericalKernel k(static_cast<std::size_t>(state.range(0)));
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(detproc::hkpv_sample(k, rng));
}
BENCHMARK(BM_HkpvSpherical)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_EllipticZeros(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(polyzeros::zeros_on_sphere(static_cast<std::size_t>(state.range(0)), ++seed));
}
BENCHMARK(BM_EllipticZeros)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_WceEnergyRoute(benchmark::State& state) {
  const auto cfg = sample_uniform(2, static_cast<std::size_t>(state.range(0)), 3);
  const wce::SobolevOrder so(2, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(wce::wce_squared(cfg, so));
}
BENCHMARK(BM_WceEnergyRoute)->RangeMultiplier(4)->Range(64, 4096);

static void BM_WceSpectralRoute(benchmark::State& state) {
  const auto cfg = sample_uniform(2, static_cast<std::size_t>(state.range(0)), 4);
  const wce::SobolevOrder so(2, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(wce::wce_squared_spectral(cfg, so, 400));
}
BENCHMARK(BM_WceSpectralRoute)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_PairwiseDistances(benchmark::State& state) {
  const auto cfg = sample_uniform(2, static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(energy::PairwiseDistances(cfg));
}
BENCHMARK(BM_PairwiseDistances)->RangeMultiplier(4)->Range(64, 4096);

BENCHMARK_MAIN();
