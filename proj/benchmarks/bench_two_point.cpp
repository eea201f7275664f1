#include <benchmark/benchmark.h>

#include "graphsync/two_point.hpp"

namespace gs = graphsync;

namespace {

void BM_XOfR(benchmark::State& state) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  for (auto _ : state) benchmark::DoNotOptimize(gs::x_of_r(theta, 0.9).value);
}
BENCHMARK(BM_XOfR);

void BM_Action(benchmark::State& state) {
  const auto theta = gs::theta_function(gs::Potential{gs::TsallisPotential{2.0}});
  for (auto _ : state) benchmark::DoNotOptimize(gs::action(theta, 0.3, 0.8).value);
}
BENCHMARK(BM_Action);

void BM_AnalyticSolution(benchmark::State& state) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  for (auto _ : state) benchmark::DoNotOptimize(gs::analytic_solution(theta, 0.3, 0.8, 0.4));
}
BENCHMARK(BM_AnalyticSolution);

}  // namespace
BENCHMARK_MAIN();
