#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnsopt/optimize.hpp"
#include "pnsopt/problem_model.hpp"
#include "pnsopt/problems/instance_io.hpp"

namespace pnsopt {

/** Which problem an experiment runs on: a generator recipe or a pinned file. */
struct ProblemSpec {
  std::string kind;  // qubo | knapsack | ising3xor | simplexqp
  std::size_t n = 0;
  double capacity = 100000.0;    // knapsack
  bool with_diagonal = true;     // qubo
  double step_sigma = 0.1;       // simplexqp
  std::string instance_file;     // when set, overrides the generator

  void validate() const;
};

struct ScheduleSpec {
  std::string label;
  ScheduleKind kind = ScheduleKind::Constant;
  double t_start = 1.0;
  double t_end = 1.0;

  /** Realises the schedule across a concrete number of steps. */
  CoolingSchedule realise(std::uint64_t iterations) const;
  void validate() const;
};

struct AlgorithmSpec {
  std::string label;
  OptAlgorithm algorithm = OptAlgorithm::SimulatedAnnealing;
  std::optional<PnsStrategy> pns;
  std::uint64_t tabu_length = 0;

  /** Candidate evaluations one step consumes (nominal, for budget planning). */
  std::uint64_t evaluations_per_step(std::size_t neighbor_count) const;
  void validate() const;
};

enum class BudgetMode { EvaluationMatched, StepMatched };

/**
 * A full comparison grid: every (schedule, algorithm) cell runs `repetitions`
 * times. Under EvaluationMatched budgeting each algorithm gets
 * floor(budget / evaluations_per_step) steps, so all cells consume the same
 * evaluation budget to within one step's worth; under StepMatched every cell
 * runs exactly `budget` steps. Repetition r derives its seed from
 * (base_seed, r), so adding repetitions never reshuffles earlier ones, and
 * results are identical no matter how many worker threads run them.
 */
struct ExperimentSpec {
  ProblemSpec problem;
  std::vector<ScheduleSpec> schedules;
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t repetitions = 1;
  std::uint64_t base_seed = 0;
  BudgetMode budget_mode = BudgetMode::EvaluationMatched;
  std::uint64_t budget = 0;
  /** Generate one instance per repetition instead of sharing one. */
  bool fresh_instance_per_repetition = false;

  void validate() const;
};

struct RunSample {
  std::uint64_t repetition = 0;
  std::string schedule;
  std::string algorithm;
  double best = 0.0;
  std::uint64_t steps = 0;
  std::uint64_t steps_to_best = 0;
  std::uint64_t evaluations = 0;
  double wall_time = 0.0;
};

struct CellSummary {
  std::string schedule;
  std::string algorithm;
  std::size_t samples = 0;
  double mean = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double mean_evaluations = 0.0;
  double mean_wall_time = 0.0;
};

struct RunSummary {
  ExperimentSpec spec;
  std::vector<RunSample> samples;  // ordered by (repetition, schedule, algorithm)
  std::vector<CellSummary> cells;  // ordered by (schedule, algorithm)
};

/**
 * Materialises the instance a ProblemSpec describes: loads the pinned file
 * when one is named, otherwise generates from the seed (stream id 0).
 */
AnyInstance make_instance(const ProblemSpec& problem, std::uint64_t seed);

/** Runs the whole grid, optionally spreading repetitions over `jobs` threads. */
RunSummary run_experiment(const ExperimentSpec& spec, unsigned jobs = 1);

/**
 * Order statistic with linear interpolation between ranks: the quantile of
 * sorted values v at fraction q sits at position q*(n-1). {1,2,3,4} gives
 * 1.75 / 2.5 / 3.25 at q = 0.25 / 0.5 / 0.75.
 */
double quantile(std::vector<double> values, double q);

/**
 * Indices of the neighbors whose rejection-free weight is within
 * exp(log_threshold) of the best one at the given state and temperature;
 * the candidates that matter for hardware-style pruning.
 */
std::vector<std::size_t> important_neighbors(ProblemModel& model,
                                             std::span<const double> state, double temp,
                                             double log_threshold = -10.0);

}  // namespace pnsopt
