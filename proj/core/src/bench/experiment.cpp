#include "pnsopt/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "pnsopt/bench/generators.hpp"
#include "pnsopt/categorical.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/log_weight.hpp"
#include "pnsopt/problems/instance_io.hpp"

namespace pnsopt {

void ProblemSpec::validate() const {
  if (kind != "qubo" && kind != "knapsack" && kind != "ising3xor" && kind != "simplexqp") {
    throw config_error("experiment: unknown problem kind '" + kind + "'");
  }
  if (instance_file.empty() && n == 0) {
    throw config_error("experiment: problem dimension must be positive");
  }
}

CoolingSchedule ScheduleSpec::realise(std::uint64_t iterations) const {
  if (kind == ScheduleKind::Constant) return CoolingSchedule::constant(t_start);
  return CoolingSchedule::geometric(t_start, t_end, std::max<std::uint64_t>(iterations, 2));
}

void ScheduleSpec::validate() const {
  if (label.empty()) throw config_error("experiment: schedules need labels");
  realise(2);  // construction performs the numeric checks
}

void AlgorithmSpec::validate() const {
  if (label.empty()) throw config_error("experiment: algorithms need labels");
  if (algorithm == OptAlgorithm::PartialNeighborSearch) {
    if (!pns.has_value()) throw config_error("experiment: pns entries need a strategy");
    pns->validate();
  }
}

std::uint64_t AlgorithmSpec::evaluations_per_step(std::size_t neighbor_count) const {
  switch (algorithm) {
    case OptAlgorithm::SimulatedAnnealing:
      return 1;
    case OptAlgorithm::RejectionFree:
    case OptAlgorithm::TabuRejectionFree:
      return neighbor_count;
    case OptAlgorithm::PartialNeighborSearch:
      return pns->subset_size(neighbor_count);
  }
  throw config_error("unknown algorithm");
}

void ExperimentSpec::validate() const {
  problem.validate();
  if (schedules.empty()) throw config_error("experiment: at least one schedule");
  if (algorithms.empty()) throw config_error("experiment: at least one algorithm");
  for (const auto& s : schedules) s.validate();
  for (const auto& a : algorithms) a.validate();
  if (repetitions == 0) throw config_error("experiment: at least one repetition");
  if (budget == 0) throw config_error("experiment: budget must be positive");
}

AnyInstance make_instance(const ProblemSpec& problem, std::uint64_t seed) {
  if (!problem.instance_file.empty()) {
    AnyInstance inst = load_instance(problem.instance_file);
    if (instance_kind(inst) != problem.kind) {
      throw config_error("experiment: instance file kind does not match the spec");
    }
    return inst;
  }
  RngStream rng(seed, 0);
  if (problem.kind == "qubo") {
    return generate_qubo(problem.n, rng, problem.with_diagonal);
  }
  if (problem.kind == "knapsack") {
    return generate_knapsack(problem.n, problem.capacity, rng);
  }
  if (problem.kind == "ising3xor") {
    return generate_3r3xor(problem.n, rng);
  }
  SimplexQpInstance inst = [&] {
    const QuboInstance q = generate_qubo(problem.n, rng, true);
    SimplexQpInstance s;
    s.n = q.n;
    s.upper = q.upper;
    s.step_sigma = problem.step_sigma;
    return s;
  }();
  inst.validate();
  return inst;
}

namespace {

std::uint64_t planned_iterations(const ExperimentSpec& spec, const AlgorithmSpec& algo,
                                 std::size_t neighbor_count, bool sampled) {
  if (spec.budget_mode == BudgetMode::StepMatched) return spec.budget;
  std::uint64_t per_step;
  if (sampled) {
    // Candidate-batch problems: SA inspects one candidate per step, PNS a
    // batch of mirrored pairs.
    per_step = algo.algorithm == OptAlgorithm::PartialNeighborSearch && algo.pns.has_value()
                   ? 2 * algo.pns->sample_pairs
                   : 1;
  } else {
    per_step = algo.evaluations_per_step(neighbor_count);
  }
  return std::max<std::uint64_t>(1, spec.budget / std::max<std::uint64_t>(per_step, 1));
}

}  // namespace

RunSummary run_experiment(const ExperimentSpec& spec, unsigned jobs) {
  spec.validate();
  if (jobs == 0) throw config_error("experiment: jobs must be >= 1");

  // A pinned or shared instance is materialised once up front.
  std::optional<AnyInstance> shared_instance;
  if (!spec.problem.instance_file.empty() || !spec.fresh_instance_per_repetition) {
    shared_instance = make_instance(spec.problem, spec.base_seed);
  }

  const std::size_t cell_count = spec.schedules.size() * spec.algorithms.size();
  RunSummary summary;
  summary.spec = spec;
  summary.samples.resize(spec.repetitions * cell_count);

  std::atomic<std::uint64_t> next_repetition{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t rep = next_repetition.fetch_add(1);
      if (rep >= spec.repetitions) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        const std::uint64_t rep_seed = mix_seed(spec.base_seed, rep);
        AnyInstance local_instance = shared_instance.has_value()
                                         ? *shared_instance
                                         : make_instance(spec.problem, rep_seed);
        std::size_t cell = 0;
        for (const auto& schedule : spec.schedules) {
          for (const auto& algo : spec.algorithms) {
            auto model = make_model(local_instance);
            const bool sampled = !model->enumerable_neighbors();
            const std::size_t degree = sampled ? 0 : model->neighbor_count();
            OptRunConfig config;
            config.algorithm = algo.algorithm;
            config.iterations = planned_iterations(spec, algo, degree, sampled);
            config.schedule = schedule.realise(config.iterations);
            config.pns = algo.pns;
            config.tabu_length = algo.tabu_length;
            config.record_visits = false;
            RngBundle rngs(mix_seed(rep_seed, 1 + cell));
            model->reset();
            const OptTrace trace = run_optimizer(*model, config, rngs);

            RunSample& sample = summary.samples[rep * cell_count + cell];
            sample.repetition = rep;
            sample.schedule = schedule.label;
            sample.algorithm = algo.label;
            sample.best = trace.best_log_target;
            sample.steps = trace.steps;
            sample.steps_to_best = trace.steps_to_best;
            sample.evaluations = trace.evaluations;
            sample.wall_time = trace.wall_time;
            ++cell;
          }
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
    const unsigned spawned = static_cast<unsigned>(
        std::min<std::uint64_t>(jobs, spec.repetitions));
    pool.reserve(spawned);
    for (unsigned t = 0; t < spawned; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Per-cell aggregates, in grid order.
  std::size_t cell = 0;
  for (const auto& schedule : spec.schedules) {
    for (const auto& algo : spec.algorithms) {
      CellSummary agg;
      agg.schedule = schedule.label;
      agg.algorithm = algo.label;
      std::vector<double> bests;
      bests.reserve(spec.repetitions);
      double eval_sum = 0.0;
      double wall_sum = 0.0;
      for (std::uint64_t rep = 0; rep < spec.repetitions; ++rep) {
        const RunSample& sample = summary.samples[rep * cell_count + cell];
        bests.push_back(sample.best);
        eval_sum += static_cast<double>(sample.evaluations);
        wall_sum += sample.wall_time;
      }
      agg.samples = bests.size();
      double total = 0.0;
      for (double b : bests) total += b;
      agg.mean = total / static_cast<double>(bests.size());
      agg.q25 = quantile(bests, 0.25);
      agg.q50 = quantile(bests, 0.50);
      agg.q75 = quantile(bests, 0.75);
      agg.mean_evaluations = eval_sum / static_cast<double>(bests.size());
      agg.mean_wall_time = wall_sum / static_cast<double>(bests.size());
      summary.cells.push_back(std::move(agg));
      ++cell;
    }
  }
  return summary;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile: q must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double position = q * static_cast<double>(values.size() - 1);
  const std::size_t lower = static_cast<std::size_t>(position);
  if (lower + 1 >= values.size()) return values.back();
  const double fraction = position - static_cast<double>(lower);
  return values[lower] + fraction * (values[lower + 1] - values[lower]);
}

std::vector<std::size_t> important_neighbors(ProblemModel& model,
                                             std::span<const double> state, double temp,
                                             double log_threshold) {
  model.set_state(state);
  if (!model.enumerable_neighbors()) {
    throw config_error("important_neighbors: needs an enumerable neighborhood");
  }
  const std::size_t count = model.neighbor_count();
  const double current = model.log_target();
  std::vector<double> log_q(count);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < count; ++i) {
    log_q[i] = model.neighbor_log_proposal(i) +
               log_acceptance(current, model.neighbor_log_target(i), temp).value;
    best = std::max(best, log_q[i]);
  }
  std::vector<std::size_t> important;
  for (std::size_t i = 0; i < count; ++i) {
    if (log_q[i] > best + log_threshold) important.push_back(i);
  }
  return important;
}

}  // namespace pnsopt
