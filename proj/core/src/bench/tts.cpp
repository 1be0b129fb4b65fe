#include "pnsopt/bench/tts.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "pnsopt/errors.hpp"
#include "pnsopt/problems/ising_xor.hpp"

namespace pnsopt {

void TtsSpec::validate() const {
  if (sizes.empty()) throw config_error("tts: at least one size");
  for (std::size_t n : sizes) {
    if (n < 3) throw config_error("tts: sizes must be >= 3");
  }
  if (algorithms.empty()) throw config_error("tts: at least one algorithm");
  for (const auto& a : algorithms) a.validate();
  schedule.validate();
  if (instances == 0) throw config_error("tts: at least one instance per size");
  if (budget == 0) throw config_error("tts: budget must be positive");
}

TtsResult run_tts(const TtsSpec& spec, unsigned jobs) {
  spec.validate();
  if (jobs == 0) throw config_error("tts: jobs must be >= 1");

  TtsResult result;
  result.spec = spec;
  const std::size_t algo_count = spec.algorithms.size();
  const std::uint64_t tasks = spec.sizes.size() * spec.instances;
  result.rows.resize(tasks * algo_count);

  std::atomic<std::uint64_t> next_task{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t task = next_task.fetch_add(1);
      if (task >= tasks) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        const std::size_t size_index = task / spec.instances;
        const std::uint64_t instance_index = task % spec.instances;
        const std::size_t n = spec.sizes[size_index];
        const std::uint64_t instance_seed =
            mix_seed(mix_seed(spec.base_seed, n), instance_index);
        RngStream gen_rng(instance_seed, 0);
        const IsingXorInstance instance = generate_3r3xor(n, gen_rng);

        for (std::size_t a = 0; a < algo_count; ++a) {
          const AlgorithmSpec& algo = spec.algorithms[a];
          IsingXorModel model(std::make_shared<IsingXorInstance>(instance));
          const std::uint64_t per_step =
              std::max<std::uint64_t>(algo.evaluations_per_step(model.neighbor_count()), 1);
          OptRunConfig config;
          config.algorithm = algo.algorithm;
          config.iterations = std::max<std::uint64_t>(1, spec.budget / per_step);
          config.schedule = spec.schedule.realise(config.iterations);
          config.pns = algo.pns;
          config.tabu_length = algo.tabu_length;
          config.record_visits = false;
          config.halt_at_value = static_cast<double>(n);
          RngBundle rngs(mix_seed(instance_seed, 1 + a));
          model.reset();
          const OptTrace trace = run_optimizer(model, config, rngs);

          TtsRow& row = result.rows[task * algo_count + a];
          row.n = n;
          row.instance = instance_index;
          row.algorithm = algo.label;
          row.solved = trace.halted_at_target;
          row.steps = trace.steps;
          row.evaluations = trace.evaluations;
          row.wall_time = trace.wall_time;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const unsigned spawned = static_cast<unsigned>(std::min<std::uint64_t>(jobs, tasks));
    pool.reserve(spawned);
    for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t s = 0; s < spec.sizes.size(); ++s) {
    for (std::size_t a = 0; a < algo_count; ++a) {
      TtsCell cell;
      cell.n = spec.sizes[s];
      cell.algorithm = spec.algorithms[a].label;
      std::vector<double> evals;
      std::vector<double> steps;
      std::vector<double> walls;
      for (std::uint64_t i = 0; i < spec.instances; ++i) {
        const TtsRow& row = result.rows[(s * spec.instances + i) * algo_count + a];
        ++cell.attempts;
        if (!row.solved) continue;
        ++cell.solved;
        evals.push_back(static_cast<double>(row.evaluations));
        steps.push_back(static_cast<double>(row.steps));
        walls.push_back(row.wall_time);
      }
      if (cell.solved > 0) {
        cell.median_evaluations = quantile(evals, 0.5);
        cell.median_steps = quantile(steps, 0.5);
        cell.median_wall_time = quantile(walls, 0.5);
      } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        cell.median_evaluations = nan;
        cell.median_steps = nan;
        cell.median_wall_time = nan;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace pnsopt
