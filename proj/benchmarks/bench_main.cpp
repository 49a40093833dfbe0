#include <benchmark/benchmark.h>

#include <vector>

#include "infodyn/channel.hpp"
#include "infodyn/classical.hpp"
#include "infodyn/metrics.hpp"
#include "infodyn/random.hpp"
#include "infodyn/recognition.hpp"

using namespace infodyn;

static void BM_PartialTrace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  const Matrix x = ginibre(n * n * n, n * n * n, rng);
  const std::vector<std::size_t> dims{n, n, n};
  const std::vector<std::size_t> traced{0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(x, dims, traced));
}
BENCHMARK(BM_PartialTrace)->Arg(2)->Arg(4)->Arg(6);

static void BM_KTau(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const auto rho = random_density(n, rng);
  const Matrix g = ginibre(n, n, rng);
  const TraceClassWeight tau(g * g.adjoint());
  for (auto _ : state) benchmark::DoNotOptimize(k_tau_apply(tau, rho.matrix()));
}
BENCHMARK(BM_KTau)->Arg(4)->Arg(16)->Arg(64);

static void BM_ChaosDegreeNonDegenerate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  const auto rho = random_density(n, rng);
  const auto ch = random_kraus_channel(n, n, 3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(chaos_degree_quantum(rho, ch));
}
BENCHMARK(BM_ChaosDegreeNonDegenerate)->Arg(2)->Arg(4)->Arg(8);

static void BM_ChaosDegreeSearch(benchmark::State& state) {
  Rng rng(4);
  const auto rho = DensityOperator::maximally_mixed(4);
  const auto ch = random_kraus_channel(4, 4, 3, rng);
  ComplexityConfig cfg;
  cfg.restarts = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chaos_degree_quantum(rho, ch, cfg));
}
BENCHMARK(BM_ChaosDegreeSearch)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_LambdaDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(5);
  const BellSystem bell(SignalBasis::fourier(n));
  const auto rho = random_density(n, rng);
  const auto gamma = random_density(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_direct(1, 1, rho, gamma, bell));
}
BENCHMARK(BM_LambdaDirect)->Arg(2)->Arg(5)->Arg(8);

static void BM_LambdaComposed(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(6);
  const BellSystem bell(SignalBasis::fourier(n));
  const auto rho = random_density(n, rng);
  const auto gamma = random_density(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_composed(1, 1, rho, gamma, bell));
}
BENCHMARK(BM_LambdaComposed)->Arg(2)->Arg(5)->Arg(8);

static void BM_LogisticEcd(benchmark::State& state) {
  const auto map = logistic_map();
  OrbitConfig cfg;
  cfg.parameter = 3.9;
  cfg.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(classical_ecd(map, cfg, Partition{100}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogisticEcd)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
