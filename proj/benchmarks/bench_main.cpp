#include <random>

#include <benchmark/benchmark.h>

#include "rescon/stability.hpp"

namespace {

using namespace rescon;

Graph bench_graph(std::size_t n) {
  std::mt19937_64 rng(7);
  return random_connected_graph(n, 0.3, rng);
}

void BM_EigenvaluesDouble(benchmark::State& state) {
  const auto sys = build_m(bench_graph(static_cast<std::size_t>(state.range(0))), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(sys.m_matrix, Precision::Double));
  state.SetLabel("dim " + std::to_string(sys.m_matrix.rows()));
}
BENCHMARK(BM_EigenvaluesDouble)->Arg(4)->Arg(8)->Arg(12)->Arg(24);

void BM_EigenvaluesExtended(benchmark::State& state) {
  const auto sys = build_m(bench_graph(static_cast<std::size_t>(state.range(0))), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(sys.m_matrix, Precision::Extended));
  state.SetLabel("dim " + std::to_string(sys.m_matrix.rows()));
}
BENCHMARK(BM_EigenvaluesExtended)->Arg(4)->Arg(8)->Arg(12)->Arg(24);

void BM_VerifyStability(benchmark::State& state) {
  const Graph g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify_stability(g, 1.0));
}
BENCHMARK(BM_VerifyStability)->Arg(12);

void BM_SimulateAdaptive(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Graph g = bench_graph(n);
  SimConfig cfg = SimConfig::with_defaults(g, Protocol::Adaptive, 1.0, Vector(n, 0.0));
  cfg.t_final = 10.0;
  DisturbanceProfile w{Vector(n, 1.0)};
  for (auto _ : state) benchmark::DoNotOptimize(simulate(g, cfg, w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.step_count()));
}
BENCHMARK(BM_SimulateAdaptive)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
