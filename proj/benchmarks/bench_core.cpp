#include <benchmark/benchmark.h>

#include "ictqkd/cs_bounds.hpp"
#include "ictqkd/photon_stats.hpp"

namespace {

void BM_KernelBoxExtrema(benchmark::State& state) {
  const ictqkd::DeviationInterval dev{-0.01, 0.01};
  const ictqkd::IntensityInterval intensity{0.45, 0.55};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ictqkd::kernel_box_extrema(n, dev, intensity));
  }
}
BENCHMARK(BM_KernelBoxExtrema)->Arg(0)->Arg(1)->Arg(5);

void BM_PhotonNumberBounds(benchmark::State& state) {
  const ictqkd::DeviationInterval dev{-0.01, 0.01};
  const ictqkd::IntensityInterval intensity{0.45, 0.55};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ictqkd::photon_number_bounds(intensity, dev, 3, 10));
  }
}
BENCHMARK(BM_PhotonNumberBounds);

void BM_CsTangent(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ictqkd::cs_tangent(0.3, 0.9));
  }
}
BENCHMARK(BM_CsTangent);

}  // namespace

BENCHMARK_MAIN();
