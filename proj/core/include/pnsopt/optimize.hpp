#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pnsopt/cooling.hpp"
#include "pnsopt/problem_model.hpp"
#include "pnsopt/rng.hpp"

namespace pnsopt {

enum class OptAlgorithm { SimulatedAnnealing, RejectionFree, PartialNeighborSearch, TabuRejectionFree };

/**
 * How partial neighbor subsets are chosen each step:
 *  - RandomEveryStep:   fresh uniform subset at every step;
 *  - RandomPeriodic:    fresh uniform subset every refresh_period steps;
 *  - BlockEveryStep:    one of two fixed blocks, picked uniformly per step;
 *  - BlockPeriodic:     one of two fixed blocks, re-picked every refresh_period steps.
 * Subsets are index sets over the neighbor list, so the symmetry
 * "Y reachable from X iff X reachable from Y under the same subset" holds by
 * construction, and each candidate keeps the same proposal weight.
 */
enum class PnsMethod { RandomEveryStep, RandomPeriodic, BlockEveryStep, BlockPeriodic };

struct PnsStrategy {
  PnsMethod method = PnsMethod::RandomEveryStep;
  double subset_fraction = 0.5;
  std::uint64_t refresh_period = 1;
  /** Two disjoint blocks covering all indices; defaults to halves. Block methods only. */
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> partition;
  /** Proposal pairs per step for sampled-candidate problems. */
  std::size_t sample_pairs = 10;

  static PnsStrategy random_every_step(double fraction);
  static PnsStrategy random_periodic(double fraction, std::uint64_t period = 10);
  static PnsStrategy block_every_step();
  static PnsStrategy block_periodic(std::uint64_t period = 10);

  void validate() const;
  /** Subset size for a neighbor list of the given size: round(fraction*count), at least 1. */
  std::size_t subset_size(std::size_t neighbor_count) const;
};

/**
 * Draws the per-step candidate index subsets for one run, caching the
 * current subset between refreshes. Call sites must present step indices in
 * nondecreasing order. force_fresh redraws regardless of the refresh phase
 * (used to escape all-infeasible subsets).
 */
class PartialNeighborDrawer {
 public:
  PartialNeighborDrawer(PnsStrategy strategy, std::size_t neighbor_count);

  std::span<const std::size_t> draw(std::uint64_t step, RngStream& rng,
                                    bool force_fresh = false);
  std::size_t subset_size() const noexcept { return subset_size_; }

 private:
  void refresh(RngStream& rng);

  PnsStrategy strategy_;
  std::size_t neighbor_count_;
  std::size_t subset_size_;
  std::vector<std::size_t> pool_;        // scratch permutation for random draws
  std::vector<std::size_t> block_a_;
  std::vector<std::size_t> block_b_;
  std::vector<std::size_t> current_;
  bool block_a_active_ = true;
  std::uint64_t next_refresh_ = 0;
};

/** Convenience wrapper over PartialNeighborDrawer for one-off draws. */
std::vector<std::size_t> draw_partial_neighbors(const PnsStrategy& strategy,
                                                std::size_t neighbor_count,
                                                std::uint64_t step, RngStream& rng);

struct OptRunConfig {
  OptAlgorithm algorithm = OptAlgorithm::SimulatedAnnealing;
  CoolingSchedule schedule = CoolingSchedule::constant(1.0);
  std::uint64_t iterations = 0;
  std::optional<PnsStrategy> pns;
  std::uint64_t tabu_length = 0;
  bool record_visits = true;
  std::uint64_t subset_retry_limit = 100;
  /** Stop as soon as the best value reaches this target (time-to-solution runs). */
  std::optional<double> halt_at_value;

  void validate() const;
};

struct OptVisit {
  std::uint64_t step = 0;
  std::uint64_t state_id = 0;
  double log_target = 0.0;
  std::uint32_t n_candidates = 0;
  double wall_time = 0.0;  // seconds since run start
};

struct OptTrace {
  std::vector<OptVisit> visited;  // filled when record_visits is on; entry 0 is the initial state
  std::vector<double> best_state;
  double best_log_target = 0.0;
  std::uint64_t steps_to_best = 0;
  std::uint64_t steps = 0;
  std::uint64_t evaluations = 0;  // candidate log-target evaluations consumed
  double wall_time = 0.0;
  bool halted_at_target = false;
};

/**
 * Accept/reject annealing: one uniform neighbor (or one sampled candidate)
 * per step, accepted with probability min{1, ratio^(1/T(k))}. One candidate
 * evaluation per step.
 */
OptTrace run_sa(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs);

/**
 * Rejection-free walk: every step weighs the entire neighbor list by
 * q(Y) = Q(x,Y) * min{1, ratio^(1/T(k))} and jumps proportionally.
 * neighbor_count evaluations per step; never stays in place.
 */
OptTrace run_rf(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs);

/**
 * Rejection-free over a partial neighbor subset per step (config.pns picks
 * the subset law). Subsets whose candidates all carry zero mass are redrawn
 * up to subset_retry_limit times before absorbing_state_error. subset_size
 * evaluations per step.
 */
OptTrace run_pns(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs);

/**
 * Rejection-free where the candidate list excludes the previous
 * config.tabu_length visited states (compared as full state vectors).
 */
OptTrace run_tabu_rf(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs);

/** Dispatches on config.algorithm. */
OptTrace run_optimizer(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs);

/**
 * The exact one-step jump law at the model's current state: normalised
 * probabilities over the neighbor list under the rejection-free weights at
 * the given temperature.
 */
std::vector<double> jump_distribution(ProblemModel& model, double temp);

}  // namespace pnsopt
