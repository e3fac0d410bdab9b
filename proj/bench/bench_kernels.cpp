// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "depcov/bootstrap.hpp"
#include "depcov/kernels.hpp"
#include "depcov/process.hpp"

namespace {

std::vector<double> gaussian_points(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> out(count);
  for (double& v : out) v = g(rng);
  return out;
}

void BM_PairwiseDistancesSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pts = gaussian_points(2 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(depcov::kernels::pairwise_distances_serial(pts, 2));
}

void BM_PairwiseDistances(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pts = gaussian_points(2 * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(depcov::kernels::pairwise_distances(pts, 2));
}

void BM_CenteredProductSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = depcov::kernels::pairwise_distances(gaussian_points(n, 1), 1);
  const auto b = depcov::kernels::pairwise_distances(gaussian_points(n, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(depcov::kernels::centered_product_serial(a, b));
}

void BM_CenteredProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = depcov::kernels::pairwise_distances(gaussian_points(n, 1), 1);
  const auto b = depcov::kernels::pairwise_distances(gaussian_points(n, 2), 1);
  for (auto _ : state) benchmark::DoNotOptimize(depcov::kernels::centered_product(a, b));
}

depcov::PairedSample ar_sample(std::size_t n) {
  depcov::Scenario sc;
  sc.x_process = depcov::ArmaSpec::ar1(0.5);
  sc.y_process = depcov::ArmaSpec::ar1(0.5);
  return depcov::make_scenario_sample(sc, n, 7);
}

depcov::BootstrapConfig bench_config() {
  depcov::BootstrapConfig cfg;
  cfg.replicates = 50;
  return cfg;
}

void BM_BootstrapSerial(benchmark::State& state) {
  const auto s = ar_sample(static_cast<std::size_t>(state.range(0)));
  const auto cfg = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(depcov::bootstrap_distribution_serial(s, cfg));
}

void BM_Bootstrap(benchmark::State& state) {
  const auto s = ar_sample(static_cast<std::size_t>(state.range(0)));
  const auto cfg = bench_config();
  for (auto _ : state) benchmark::DoNotOptimize(depcov::bootstrap_distribution(s, cfg));
}

}  // namespace

BENCHMARK(BM_PairwiseDistancesSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_PairwiseDistances)->Arg(256)->Arg(1024);
BENCHMARK(BM_CenteredProductSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_CenteredProduct)->Arg(256)->Arg(1024);
BENCHMARK(BM_BootstrapSerial)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Bootstrap)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
