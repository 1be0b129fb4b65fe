#include "pnsopt/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnsopt/categorical.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/log_weight.hpp"

namespace pnsopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
using Clock = std::chrono::steady_clock;
}  // namespace

PnsStrategy PnsStrategy::random_every_step(double fraction) {
  PnsStrategy s;
  s.method = PnsMethod::RandomEveryStep;
  s.subset_fraction = fraction;
  s.refresh_period = 1;
  s.validate();
  return s;
}

PnsStrategy PnsStrategy::random_periodic(double fraction, std::uint64_t period) {
  PnsStrategy s;
  s.method = PnsMethod::RandomPeriodic;
  s.subset_fraction = fraction;
  s.refresh_period = period;
  s.validate();
  return s;
}

PnsStrategy PnsStrategy::block_every_step() {
  PnsStrategy s;
  s.method = PnsMethod::BlockEveryStep;
  s.refresh_period = 1;
  s.validate();
  return s;
}

PnsStrategy PnsStrategy::block_periodic(std::uint64_t period) {
  PnsStrategy s;
  s.method = PnsMethod::BlockPeriodic;
  s.refresh_period = period;
  s.validate();
  return s;
}

void PnsStrategy::validate() const {
  if (!(subset_fraction > 0.0) || subset_fraction > 1.0) {
    throw config_error("pns: subset fraction must lie in (0, 1]");
  }
  if (refresh_period == 0) throw config_error("pns: refresh period must be >= 1");
  if (sample_pairs == 0) throw config_error("pns: need at least one proposal pair");
  const bool periodic =
      method == PnsMethod::RandomPeriodic || method == PnsMethod::BlockPeriodic;
  if (!periodic && refresh_period != 1) {
    throw config_error("pns: per-step methods refresh every step");
  }
  const bool block =
      method == PnsMethod::BlockEveryStep || method == PnsMethod::BlockPeriodic;
  if (partition.has_value() && !block) {
    throw config_error("pns: partitions apply to block methods only");
  }
}

std::size_t PnsStrategy::subset_size(std::size_t neighbor_count) const {
  if (method == PnsMethod::BlockEveryStep || method == PnsMethod::BlockPeriodic) {
    if (partition.has_value()) {
      return std::max(partition->first.size(), partition->second.size());
    }
    return (neighbor_count + 1) / 2;
  }
  const auto rounded = static_cast<std::size_t>(
      std::llround(subset_fraction * static_cast<double>(neighbor_count)));
  return std::clamp<std::size_t>(rounded, 1, neighbor_count);
}

PartialNeighborDrawer::PartialNeighborDrawer(PnsStrategy strategy,
                                             std::size_t neighbor_count)
    : strategy_(std::move(strategy)), neighbor_count_(neighbor_count) {
  strategy_.validate();
  if (neighbor_count_ == 0) throw config_error("pns: empty neighborhood");
  subset_size_ = strategy_.subset_size(neighbor_count_);

  const bool block = strategy_.method == PnsMethod::BlockEveryStep ||
                     strategy_.method == PnsMethod::BlockPeriodic;
  if (block) {
    if (strategy_.partition.has_value()) {
      block_a_ = strategy_.partition->first;
      block_b_ = strategy_.partition->second;
      std::vector<std::uint8_t> seen(neighbor_count_, 0);
      for (const auto& blk : {block_a_, block_b_}) {
        if (blk.empty()) throw config_error("pns: partition blocks must be non-empty");
        for (std::size_t idx : blk) {
          if (idx >= neighbor_count_ || seen[idx]) {
            throw config_error("pns: partition must split the neighborhood disjointly");
          }
          seen[idx] = 1;
        }
      }
      for (std::uint8_t c : seen) {
        if (!c) throw config_error("pns: partition must cover the whole neighborhood");
      }
    } else {
      const std::size_t half = neighbor_count_ / 2;
      for (std::size_t i = 0; i < half; ++i) block_a_.push_back(i);
      for (std::size_t i = half; i < neighbor_count_; ++i) block_b_.push_back(i);
      if (block_a_.empty()) throw config_error("pns: neighborhood too small to halve");
    }
  } else {
    pool_.resize(neighbor_count_);
    for (std::size_t i = 0; i < neighbor_count_; ++i) pool_[i] = i;
  }
}

void PartialNeighborDrawer::refresh(RngStream& rng) {
  const bool block = strategy_.method == PnsMethod::BlockEveryStep ||
                     strategy_.method == PnsMethod::BlockPeriodic;
  if (block) {
    block_a_active_ = rng.uniform_index(2) == 0;
    current_ = block_a_active_ ? block_a_ : block_b_;
    return;
  }
  if (subset_size_ == neighbor_count_) {
    // Degenerate full subset: identity, no randomness consumed.
    current_ = pool_;
    std::sort(current_.begin(), current_.end());
    return;
  }
  for (std::size_t t = 0; t < subset_size_; ++t) {
    const std::size_t j = t + rng.uniform_index(neighbor_count_ - t);
    std::swap(pool_[t], pool_[j]);
  }
  current_.assign(pool_.begin(), pool_.begin() + subset_size_);
}

std::span<const std::size_t> PartialNeighborDrawer::draw(std::uint64_t step,
                                                         RngStream& rng,
                                                         bool force_fresh) {
  if (force_fresh || step >= next_refresh_ || current_.empty()) {
    refresh(rng);
    if (step >= next_refresh_) next_refresh_ = step + strategy_.refresh_period;
  }
  return current_;
}

std::vector<std::size_t> draw_partial_neighbors(const PnsStrategy& strategy,
                                                std::size_t neighbor_count,
                                                std::uint64_t step, RngStream& rng) {
  PartialNeighborDrawer drawer(strategy, neighbor_count);
  const auto subset = drawer.draw(step, rng);
  return std::vector<std::size_t>(subset.begin(), subset.end());
}

void OptRunConfig::validate() const {
  if (algorithm == OptAlgorithm::PartialNeighborSearch && !pns.has_value()) {
    throw config_error("pns: strategy missing from the run configuration");
  }
  if (pns.has_value()) pns->validate();
}

namespace {

/** Shared per-run bookkeeping: visits, best tracking, halting, timing. */
class RunRecorder {
 public:
  RunRecorder(ProblemModel& model, const OptRunConfig& config)
      : model_(model), config_(config), start_(Clock::now()) {
    if (model_.log_target() == kNegInf) {
      throw std::invalid_argument(model_.kind() + ": initial state has zero target mass");
    }
    trace_.best_state = model_.state();
    trace_.best_log_target = model_.log_target();
    trace_.steps_to_best = 0;
    record_visit(0, 0);
    check_halt();
  }

  void after_step(std::uint64_t step, std::uint32_t n_candidates, std::uint64_t evals) {
    trace_.steps = step + 1;
    trace_.evaluations += evals;
    record_visit(step + 1, n_candidates);
    if (model_.log_target() > trace_.best_log_target) {
      trace_.best_log_target = model_.log_target();
      trace_.best_state = model_.state();
      trace_.steps_to_best = step + 1;
    }
    check_halt();
  }

  bool halted() const noexcept { return trace_.halted_at_target; }

  OptTrace finish() {
    trace_.wall_time = elapsed();
    return std::move(trace_);
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  void record_visit(std::uint64_t step, std::uint32_t n_candidates) {
    if (!config_.record_visits) return;
    trace_.visited.push_back(OptVisit{step, model_.state_id(), model_.log_target(),
                                      n_candidates, elapsed()});
  }

  void check_halt() {
    if (config_.halt_at_value.has_value() &&
        trace_.best_log_target >= *config_.halt_at_value) {
      trace_.halted_at_target = true;
    }
  }

  ProblemModel& model_;
  const OptRunConfig& config_;
  Clock::time_point start_;
  OptTrace trace_;
};

void require_enumerable(const ProblemModel& model, const char* algo) {
  if (!model.enumerable_neighbors()) {
    throw config_error(std::string(algo) + " needs an enumerable neighborhood (" +
                       model.kind() + " has none)");
  }
}

/** Fills log_q with the rejection-free candidate weights over all neighbors. */
void full_neighbor_weights(const ProblemModel& model, double temp,
                           std::vector<double>& log_q) {
  const std::size_t count = model.neighbor_count();
  const double current = model.log_target();
  log_q.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    log_q[i] = model.neighbor_log_proposal(i) +
               log_acceptance(current, model.neighbor_log_target(i), temp).value;
  }
}

}  // namespace

OptTrace run_sa(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs) {
  config.validate();
  RunRecorder recorder(model, config);
  std::vector<double> candidate_targets;
  for (std::uint64_t k = 0; k < config.iterations && !recorder.halted(); ++k) {
    const double temp = config.schedule.temperature_at(k);
    if (model.sampled_candidates()) {
      model.sample_candidate_pairs(1, rngs.proposal, candidate_targets);
      const double log_acc =
          log_acceptance(model.log_target(), candidate_targets[0], temp).value;
      if (rngs.select.uniform01() < std::exp(log_acc)) model.step_to_candidate(0);
    } else {
      const std::size_t i = propose_neighbor(model, rngs.proposal);
      const double log_acc =
          log_acceptance(model.log_target(), model.neighbor_log_target(i), temp).value;
      if (rngs.select.uniform01() < std::exp(log_acc)) model.step_to_neighbor(i);
    }
    recorder.after_step(k, 1, 1);
  }
  return recorder.finish();
}

OptTrace run_rf(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs) {
  config.validate();
  require_enumerable(model, "rejection-free");
  RunRecorder recorder(model, config);
  std::vector<double> log_q;
  for (std::uint64_t k = 0; k < config.iterations && !recorder.halted(); ++k) {
    const double temp = config.schedule.temperature_at(k);
    full_neighbor_weights(model, temp, log_q);
    if (log_sum_exp(log_q) == kNegInf) {
      throw absorbing_state_error(model.kind() + ": no neighbor carries target mass");
    }
    const std::size_t next = categorical_pick(log_q, rngs.select);
    model.step_to_neighbor(next);
    recorder.after_step(k, static_cast<std::uint32_t>(log_q.size()), log_q.size());
  }
  return recorder.finish();
}

OptTrace run_pns(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs) {
  config.validate();
  if (!config.pns.has_value()) {
    throw config_error("pns: strategy missing from the run configuration");
  }
  const PnsStrategy& strategy = *config.pns;

  if (model.sampled_candidates()) {
    if (strategy.method != PnsMethod::RandomEveryStep) {
      throw config_error("pns: sampled-candidate problems support fresh-per-step draws only");
    }
    RunRecorder recorder(model, config);
    std::vector<double> candidate_targets;
    std::vector<double> log_q;
    for (std::uint64_t k = 0; k < config.iterations && !recorder.halted(); ++k) {
      const double temp = config.schedule.temperature_at(k);
      std::uint64_t evals = 0;
      std::size_t count = 0;
      for (std::uint64_t attempt = 0;; ++attempt) {
        count = model.sample_candidate_pairs(strategy.sample_pairs, rngs.proposal,
                                             candidate_targets);
        evals += count;
        const double current = model.log_target();
        const double log_uniform = -std::log(static_cast<double>(count));
        log_q.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
          log_q[i] =
              log_uniform + log_acceptance(current, candidate_targets[i], temp).value;
        }
        if (log_sum_exp(log_q) != kNegInf) break;
        if (attempt >= config.subset_retry_limit) {
          throw absorbing_state_error(model.kind() +
                                      ": every sampled candidate set was infeasible");
        }
      }
      const std::size_t next = categorical_pick(log_q, rngs.select);
      model.step_to_candidate(next);
      recorder.after_step(k, static_cast<std::uint32_t>(count), evals);
    }
    return recorder.finish();
  }

  require_enumerable(model, "pns");
  PartialNeighborDrawer drawer(strategy, model.neighbor_count());
  RunRecorder recorder(model, config);
  std::vector<double> log_q;
  for (std::uint64_t k = 0; k < config.iterations && !recorder.halted(); ++k) {
    const double temp = config.schedule.temperature_at(k);
    std::uint64_t evals = 0;
    std::span<const std::size_t> subset;
    for (std::uint64_t attempt = 0;; ++attempt) {
      subset = drawer.draw(k, rngs.subset, attempt > 0);
      const double current = model.log_target();
      log_q.resize(subset.size());
      for (std::size_t i = 0; i < subset.size(); ++i) {
        log_q[i] = model.neighbor_log_proposal(subset[i]) +
                   log_acceptance(current, model.neighbor_log_target(subset[i]), temp).value;
      }
      evals += subset.size();
      if (log_sum_exp(log_q) != kNegInf) break;
      if (attempt >= config.subset_retry_limit) {
        throw absorbing_state_error(model.kind() +
                                    ": every drawn subset was entirely infeasible");
      }
    }
    const std::size_t next = categorical_pick(log_q, rngs.select);
    model.step_to_neighbor(subset[next]);
    recorder.after_step(k, static_cast<std::uint32_t>(subset.size()), evals);
  }
  return recorder.finish();
}

OptTrace run_tabu_rf(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs) {
  config.validate();
  require_enumerable(model, "tabu");
  RunRecorder recorder(model, config);
  std::deque<std::vector<double>> window;
  std::vector<std::uint8_t> excluded(model.neighbor_count(), 0);
  std::vector<std::size_t> candidates;
  std::vector<double> log_q;

  for (std::uint64_t k = 0; k < config.iterations && !recorder.halted(); ++k) {
    const double temp = config.schedule.temperature_at(k);
    const std::size_t count = model.neighbor_count();
    excluded.assign(count, 0);
    for (const auto& past : window) {
      if (const auto idx = model.neighbor_matching(past)) excluded[*idx] = 1;
    }
    candidates.clear();
    for (std::size_t i = 0; i < count; ++i) {
      if (!excluded[i]) candidates.push_back(i);
    }
    if (candidates.empty()) {
      throw absorbing_state_error(model.kind() + ": tabu window covers the whole neighborhood");
    }
    const double current = model.log_target();
    log_q.resize(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      log_q[i] = model.neighbor_log_proposal(candidates[i]) +
                 log_acceptance(current, model.neighbor_log_target(candidates[i]), temp).value;
    }
    if (log_sum_exp(log_q) == kNegInf) {
      throw absorbing_state_error(model.kind() + ": no admissible neighbor carries target mass");
    }
    const std::size_t next = categorical_pick(log_q, rngs.select);
    std::vector<double> previous = model.state();
    model.step_to_neighbor(candidates[next]);
    if (config.tabu_length > 0) {
      window.push_back(std::move(previous));
      while (window.size() > config.tabu_length) window.pop_front();
    }
    recorder.after_step(k, static_cast<std::uint32_t>(candidates.size()), candidates.size());
  }
  return recorder.finish();
}

OptTrace run_optimizer(ProblemModel& model, const OptRunConfig& config, RngBundle& rngs) {
  switch (config.algorithm) {
    case OptAlgorithm::SimulatedAnnealing:
      return run_sa(model, config, rngs);
    case OptAlgorithm::RejectionFree:
      return run_rf(model, config, rngs);
    case OptAlgorithm::PartialNeighborSearch:
      return run_pns(model, config, rngs);
    case OptAlgorithm::TabuRejectionFree:
      return run_tabu_rf(model, config, rngs);
  }
  throw config_error("unknown algorithm");
}

std::vector<double> jump_distribution(ProblemModel& model, double temp) {
  std::vector<double> log_q;
  full_neighbor_weights(model, temp, log_q);
  const double lse = log_sum_exp(log_q);
  if (lse == kNegInf) {
    throw absorbing_state_error(model.kind() + ": no neighbor carries target mass");
  }
  std::vector<double> probs(log_q.size());
  for (std::size_t i = 0; i < log_q.size(); ++i) probs[i] = std::exp(log_q[i] - lse);
  return probs;
}

}  // namespace pnsopt
