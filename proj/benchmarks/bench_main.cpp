#include <benchmark/benchmark.h>

#include "oscillat/covers.hpp"
#include "oscillat/maximal.hpp"
#include "oscillat/oscillation.hpp"
#include "oscillat/random.hpp"

using namespace oscillat;

namespace {

PointCloud plane(std::size_t n, SampledFunction& f) {
  SeededRng rng(7);
  std::vector<std::vector<double>> pts(n);
  std::vector<double> w(n);
  f.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = {rng.uniform(), rng.uniform()};
    w[i] = rng.uniform(0.5, 2.0);
    f.values[i] = rng.uniform(-1.0, 1.0);
  }
  return PointCloud::euclidean(pts, w);
}

void BM_IntervalMaximal(benchmark::State& state) {
  SeededRng rng(1);
  const IntervalSpace s = random_interval_space(rng, 0.0, 2.0, static_cast<std::size_t>(state.range(0)));
  const PiecewiseLinear f = random_piecewise(rng, 0.0, 2.0, 16, -1.0, 1.0, true);
  const IntervalFamily fam = IntervalFamily::full(s);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_maximal(s, f, 0.5, fam));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntervalMaximal)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_IntervalBmo(benchmark::State& state) {
  SeededRng rng(2);
  const IntervalSpace s = IntervalSpace::lebesgue(0.0, 2.0, static_cast<std::size_t>(state.range(0)));
  const PiecewiseLinear f = random_piecewise(rng, 0.0, 2.0, 16);
  const IntervalFamily fam = IntervalFamily::full(s);
  for (auto _ : state) benchmark::DoNotOptimize(bmo_norm(s, f, 1.0, fam));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntervalBmo)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_PointMaximal(benchmark::State& state) {
  SampledFunction f;
  const PointCloud c = plane(static_cast<std::size_t>(state.range(0)), f);
  const PointFamily fam = PointFamily::full(c);
  for (auto _ : state) benchmark::DoNotOptimize(fractional_maximal(c, f, 0.0, fam));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PointMaximal)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_CoverAndConvolution(benchmark::State& state) {
  SampledFunction f;
  const PointCloud c = plane(static_cast<std::size_t>(state.range(0)), f);
  for (auto _ : state) benchmark::DoNotOptimize(discrete_convolution(c, f, 0.1));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CoverAndConvolution)->RangeMultiplier(2)->Range(256, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
