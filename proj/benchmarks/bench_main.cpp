#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "hetnet/analysis.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/specfun.hpp"

namespace {

void BM_ZKernel(benchmark::State& state) {
  const double tau = hetnet::db_to_linear(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetnet::z_kernel(tau, 3.5, 0.1));
  }
}
BENCHMARK(BM_ZKernel)->Arg(-10)->Arg(0)->Arg(20);

void BM_ZKernelAlpha4(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetnet::z_kernel_alpha4(3.0, 0.1));
  }
}
BENCHMARK(BM_ZKernelAlpha4);

void BM_OutageNetwork(benchmark::State& state) {
  const hetnet::NetworkConfig c =
      state.range(0) == 0 ? fixture::macro_pico(10.0, 10.0) : fixture::three_tier_mixed();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetnet::outage_network(c, 2.0));
  }
}
BENCHMARK(BM_OutageNetwork)->Arg(0)->Arg(1);

void BM_ErgodicRate(benchmark::State& state) {
  const hetnet::NetworkConfig c = fixture::macro_pico(10.0, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hetnet::ergodic_rate_network(c));
  }
}
BENCHMARK(BM_ErgodicRate)->Unit(benchmark::kMillisecond);

void BM_Replication(benchmark::State& state) {
  hetnet::SimSettings s;
  s.config = fixture::macro_pico(static_cast<double>(state.range(0)), 10.0);
  s = hetnet::resolve(s);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    const hetnet::Deployment d = hetnet::sample_deployment(s, rep);
    const hetnet::Association a = hetnet::associate(d, s.config);
    auto streams = hetnet::fading_streams(s.master_seed, rep, 0, 2);
    benchmark::DoNotOptimize(hetnet::draw_sinr(d, a, s.config, streams));
    ++rep;
  }
}
BENCHMARK(BM_Replication)->Arg(2)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
