#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pnsopt/problem_model.hpp"

namespace pnsopt {

/**
 * Two high-mass hubs joined by an edge, each carrying n_spokes low-mass leaf
 * neighbors. The classic trap: a walker at a hub must either cross to the
 * other hub or pay a huge target drop to visit a leaf, so rejection-heavy
 * chains stall while jump chains cross immediately.
 *
 * State indices: 0 = first hub, 1 = second hub, 2..n_spokes+1 leaves of the
 * first hub, n_spokes+2..2*n_spokes+1 leaves of the second.
 */
struct ToyLocalMaxInstance {
  std::size_t n_spokes = 10;
  double hub_target = 100.0;
  double spoke_target = 0.01;

  void validate() const;
};

class ToyGraphModel final : public ProblemModel {
 public:
  explicit ToyGraphModel(std::shared_ptr<const ToyLocalMaxInstance> inst);

  std::string kind() const override { return "toy"; }
  std::size_t dimension() const override { return 1; }
  void reset() override { current_ = 0; }

  double log_target() const override { return log_target_of(current_); }
  std::vector<double> state() const override;
  void set_state(std::span<const double> s) override;
  std::uint64_t state_id() const override { return current_; }

  std::size_t neighbor_count() const override;
  double neighbor_log_target(std::size_t i) const override;
  void step_to_neighbor(std::size_t i) override;
  std::optional<std::size_t> neighbor_matching(std::span<const double> target) const override;

  std::size_t state_count() const noexcept { return 2 * inst_->n_spokes + 2; }
  bool at_hub() const noexcept { return current_ < 2; }
  /** The state index the i-th neighbor of the current state refers to. */
  std::size_t neighbor_state(std::size_t i) const;

 private:
  double log_target_of(std::size_t state) const;

  std::shared_ptr<const ToyLocalMaxInstance> inst_;
  std::uint64_t current_ = 0;
};

}  // namespace pnsopt
