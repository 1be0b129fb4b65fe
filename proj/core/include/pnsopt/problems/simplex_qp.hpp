#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pnsopt/problem_model.hpp"

namespace pnsopt {

/**
 * Quadratic maximisation over the open probability simplex:
 * log pi(x) = x^T Q x for x with all coordinates in (0, 1) and sum 1;
 * states outside carry no mass. Q is stored as a row-major upper triangle.
 */
struct SimplexQpInstance {
  std::size_t n = 0;
  std::vector<double> upper;  // size n*(n+1)/2
  double step_sigma = 0.1;    // proposal step scale

  double at(std::size_t i, std::size_t j) const;
  void validate() const;
};

/** log pi(x) by direct evaluation, with the open-simplex feasibility check. */
double simplex_log_target(const SimplexQpInstance& inst, std::span<const double> x);

/**
 * One proposal move: coordinate r shifts by s, every other coordinate is
 * rescaled by (1 - y_r) / (1 - x_r) so the total stays 1. The inverse move
 * (-s at r, applied to the result) recovers x.
 */
std::vector<double> simplex_propose(std::span<const double> x, std::size_t r, double s);

/**
 * Sampled-candidate model: each draw picks a coordinate r uniformly and a
 * Normal(0, sigma^2) shift s, yielding the mirrored pair (+s, -s). Candidate
 * log targets come from cached linear forms in O(1); adopting a candidate is
 * O(n). The running state is renormalised every 1000 accepted moves to pin
 * the coordinate sum at 1.
 */
class SimplexQpModel final : public ProblemModel {
 public:
  explicit SimplexQpModel(std::shared_ptr<const SimplexQpInstance> inst);

  std::string kind() const override { return "simplexqp"; }
  std::size_t dimension() const override { return inst_->n; }
  void reset() override;

  double log_target() const override { return value_; }
  std::vector<double> state() const override { return x_; }
  void set_state(std::span<const double> s) override;
  std::uint64_t state_id() const override;

  bool enumerable_neighbors() const override { return false; }
  std::size_t neighbor_count() const override;
  double neighbor_log_target(std::size_t i) const override;
  void step_to_neighbor(std::size_t i) override;
  std::optional<std::size_t> neighbor_matching(std::span<const double>) const override;

  bool sampled_candidates() const override { return true; }
  std::size_t sample_candidate_pairs(std::size_t pairs, RngStream& rng,
                                     std::vector<double>& log_targets) override;
  void step_to_candidate(std::size_t i) override;

 private:
  struct Candidate {
    std::size_t r;
    double shift;
    double log_target;
  };

  void rebuild_caches();
  double candidate_value(std::size_t r, double y_r) const;

  std::shared_ptr<const SimplexQpInstance> inst_;
  std::vector<double> sym_;      // dense symmetrised Q
  std::vector<double> x_;
  std::vector<double> action_;   // sym_ * x
  double value_ = 0.0;
  std::vector<Candidate> batch_;
  std::uint64_t accepted_moves_ = 0;
};

}  // namespace pnsopt
