// Microbenchmarks for the hot loops: single-neighbor evaluation, full and
// partial rejection-free steps, and the categorical draw that powers them.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "pnsopt/bench/generators.hpp"
#include "pnsopt/categorical.hpp"
#include "pnsopt/optimize.hpp"
#include "pnsopt/problems/qubo.hpp"
#include "pnsopt/rng.hpp"

namespace {

using namespace pnsopt;

std::shared_ptr<const QuboInstance> shared_instance(std::size_t n) {
  RngStream rng(12345, 0);
  return std::make_shared<const QuboInstance>(generate_qubo(n, rng));
}

void BM_qubo_flip_delta(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel model(shared_instance(n));
  model.reset();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.neighbor_log_target(i));
    i = (i + 1) % n;
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_qubo_flip_delta)->Arg(64)->Arg(256)->Arg(1024);

void BM_rf_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel model(shared_instance(n));
  OptRunConfig config;
  config.algorithm = OptAlgorithm::RejectionFree;
  config.iterations = 1;
  config.record_visits = false;
  RngBundle rngs(7);
  model.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_rf(model, config, rngs));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n));
}
BENCHMARK(BM_rf_step)->Arg(64)->Arg(256)->Arg(1024);

void BM_pns_step(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  QuboModel model(shared_instance(n));
  OptRunConfig config;
  config.algorithm = OptAlgorithm::PartialNeighborSearch;
  config.pns = PnsStrategy::random_every_step(0.25);
  config.iterations = 1;
  config.record_visits = false;
  RngBundle rngs(7);
  model.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pns(model, config, rngs));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(n / 4));
}
BENCHMARK(BM_pns_step)->Arg(64)->Arg(256)->Arg(1024);

void BM_categorical_pick(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RngStream weight_rng(99, 0);
  std::vector<double> log_weights(n);
  for (double& w : log_weights) w = weight_rng.normal(0.0, 1.0);
  RngStream rng(100, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(categorical_pick(log_weights, rng));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_categorical_pick)->Arg(16)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
