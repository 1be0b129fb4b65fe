#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pnsopt/problem_model.hpp"

namespace pnsopt {

/**
 * Binary quadratic maximisation: log pi(x) = x^T Q x with Q upper triangular.
 * The triangle (diagonal included) is stored row-major; entries strictly
 * below the diagonal are implicitly zero.
 */
struct QuboInstance {
  std::size_t n = 0;
  std::vector<double> upper;  // size n*(n+1)/2

  /** Q[i][j]; zero below the diagonal. */
  double at(std::size_t i, std::size_t j) const;
  /** Index of (i, j), i <= j, inside the packed triangle. */
  std::size_t triangle_index(std::size_t i, std::size_t j) const;

  void validate() const;
};

/** x^T Q x by direct summation; the reference evaluation. */
double qubo_log_target(const QuboInstance& inst, std::span<const std::uint8_t> x);

/** Target change from flipping bit i of x; single pass over row/column i. */
double qubo_flip_delta(const QuboInstance& inst, std::span<const std::uint8_t> x,
                       std::size_t i);

/**
 * Single-flip neighborhood model over a QUBO instance. Keeps per-bit gain
 * caches so each neighbor evaluation is O(1) and each move is O(n).
 */
class QuboModel final : public ProblemModel {
 public:
  explicit QuboModel(std::shared_ptr<const QuboInstance> inst);

  std::string kind() const override { return "qubo"; }
  std::size_t dimension() const override { return inst_->n; }
  void reset() override;

  double log_target() const override { return value_; }
  std::vector<double> state() const override;
  void set_state(std::span<const double> s) override;
  std::uint64_t state_id() const override;

  std::size_t neighbor_count() const override { return inst_->n; }
  double neighbor_log_target(std::size_t i) const override;
  void step_to_neighbor(std::size_t i) override;
  std::optional<std::size_t> neighbor_matching(std::span<const double> target) const override;

  /** O(1) read of the cached flip delta for bit i. */
  double flip_delta(std::size_t i) const;
  const std::vector<std::uint8_t>& bits() const noexcept { return x_; }

 private:
  void rebuild_caches();

  std::shared_ptr<const QuboInstance> inst_;
  std::vector<double> coupling_;  // dense symmetric off-diagonal couplings
  std::vector<double> diagonal_;
  std::vector<std::uint8_t> x_;
  std::vector<double> gain_;  // gain_[i] = diagonal_[i] + sum_j coupling_[i][j] * x_j
  double value_ = 0.0;
  std::uint64_t moves_since_rebuild_ = 0;
};

}  // namespace pnsopt
