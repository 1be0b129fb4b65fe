#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pnsopt/problem_model.hpp"

namespace pnsopt {

/**
 * 0/1 knapsack as a constrained target: pi(x) = (v . x) when w . x <= capacity,
 * zero mass otherwise. Weights and values are positive.
 */
struct KnapsackInstance {
  std::size_t n = 0;
  double capacity = 0.0;
  std::vector<double> weights;
  std::vector<double> values;

  void validate() const;
};

/**
 * Log-target floor for the feasible empty selection. Its value (zero) has no
 * positive log, so it gets a finite but astronomically negative stand-in:
 * any move to positive value is then accepted outright, while moves into the
 * empty selection carry zero numerical weight.
 */
inline constexpr double kEmptySelectionLogTarget = -1e150;

/** log pi(x): log(v . x) if feasible, the empty-selection floor at x = 0, -inf if overweight. */
double knapsack_log_target(const KnapsackInstance& inst, std::span<const std::uint8_t> x);

/** Single-flip neighborhood model with O(1) incremental weight/value tracking. */
class KnapsackModel final : public ProblemModel {
 public:
  explicit KnapsackModel(std::shared_ptr<const KnapsackInstance> inst);

  std::string kind() const override { return "knapsack"; }
  std::size_t dimension() const override { return inst_->n; }
  void reset() override;

  double log_target() const override;
  std::vector<double> state() const override;
  void set_state(std::span<const double> s) override;
  std::uint64_t state_id() const override;

  std::size_t neighbor_count() const override { return inst_->n; }
  double neighbor_log_target(std::size_t i) const override;
  void step_to_neighbor(std::size_t i) override;
  std::optional<std::size_t> neighbor_matching(std::span<const double> target) const override;

  double total_weight() const noexcept { return total_weight_; }
  double total_value() const noexcept { return total_value_; }

 private:
  void rebuild_totals();
  static double log_of(double weight_sum, double value_sum, double capacity);

  std::shared_ptr<const KnapsackInstance> inst_;
  std::vector<std::uint8_t> x_;
  double total_weight_ = 0.0;
  double total_value_ = 0.0;
  std::uint64_t moves_since_rebuild_ = 0;
};

}  // namespace pnsopt
