#include <benchmark/benchmark.h>

#include <vector>

#include "graphsync/first_order.hpp"
#include "graphsync/graph.hpp"
#include "graphsync/second_order.hpp"

namespace gs = graphsync;

namespace {

std::vector<double> spread_density(std::size_t n) {
  std::vector<double> rho(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += rho[j] = 1.0 + 0.1 * static_cast<double>(j);
  for (auto& v : rho) v /= total;
  return rho;
}

void BM_FirstOrderRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gs::complete_graph(n);
  const auto rho = spread_density(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    gs::rhs_first_order(g, gs::MinPower{2.0}, 1.0, rho, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.edges().size()));
}
BENCHMARK(BM_FirstOrderRhs)->RangeMultiplier(4)->Range(4, 256);

void BM_SecondOrderRhs(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gs::complete_graph(n);
  const gs::KuramotoQuadratic pot{1.0};
  const auto x = gs::gradient_flow_init(spread_density(n), pot);
  for (auto _ : state) {
    auto d = gs::rhs_second_order(g, gs::MinPower{2.0}, pot, x);
    benchmark::DoNotOptimize(d.dS.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.edges().size()));
}
BENCHMARK(BM_SecondOrderRhs)->RangeMultiplier(4)->Range(4, 256);

void BM_CycleGraphRun(benchmark::State& state) {
  const auto g = gs::named_graph("cycle6");
  const std::vector<double> rho0 = {0.3, 0.2, 0.1, 0.1, 0.1, 0.2};
  const gs::IntegratorSpec spec{gs::Scheme::kRK4, 0.01, 500.0, 100, true};
  for (auto _ : state) {
    auto traj = gs::simulate_first_order(g, gs::MinPower{1.0}, 1.0, rho0, spec);
    benchmark::DoNotOptimize(traj.states.data());
  }
}
BENCHMARK(BM_CycleGraphRun)->Unit(benchmark::kMillisecond);

void BM_SecondOrderSynchronization(benchmark::State& state) {
  const auto g = gs::complete_graph(6);
  const gs::PhaseState x0{{0.3224, 0.2108, 0.1071, 0.0713, 0.2518, 0.0366},
                          {0.1597, -1.1129, 0.5929, 0.4568, 0.8299, -0.2499}};
  gs::SecondOrderOptions opts;
  opts.synchronization_threshold = 0.99;
  const gs::IntegratorSpec spec{gs::Scheme::kRK4, 0.01, 200.0, 100, true};
  for (auto _ : state) {
    auto traj = gs::simulate_second_order(g, gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0}, x0, spec, opts);
    benchmark::DoNotOptimize(traj.states.data());
  }
}
BENCHMARK(BM_SecondOrderSynchronization)->Unit(benchmark::kMillisecond);

}  // namespace
