#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pnsopt/problem_model.hpp"
#include "pnsopt/rng.hpp"

namespace pnsopt {

/** One cubic interaction: coeff * s_a * s_b * s_c with a < b < c. */
struct IsingClause {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t c = 0;
  int coeff = 0;
};

/**
 * A planted XOR-SAT system lifted to spins. Row i of the invertible binary
 * matrix A has exactly three ones; with rhs bit b_i it contributes the clause
 * (-1)^{b_i} * s_a s_b s_c. The energy H(s) = sum of clause terms peaks at
 * exactly n, attained only by the planted spin assignment s = 1 - 2x where x
 * solves A x = b. Identical variable triples from different rows accumulate
 * into one clause with a summed coefficient.
 */
struct IsingXorInstance {
  std::size_t n = 0;
  std::vector<std::array<std::uint32_t, 3>> rows;  // positions of the ones in each row of A
  std::vector<std::uint8_t> b;
  std::vector<std::int8_t> planted;  // spins, +1 / -1
  std::vector<IsingClause> clauses;

  void validate() const;
};

/**
 * Samples rows and rhs uniformly until A is invertible over GF(2), then
 * solves for the planted assignment. Throws generation_error after
 * max_attempts singular draws.
 */
IsingXorInstance generate_3r3xor(std::size_t n, RngStream& rng,
                                 std::size_t max_attempts = 1000);

/** Number of rows of A x = b violated by the bit assignment x. */
std::size_t count_violations(const IsingXorInstance& inst,
                             std::span<const std::uint8_t> x);

/** H(s) by direct clause summation. */
double ising_energy(const IsingXorInstance& inst, std::span<const std::int8_t> spins);

/**
 * Single-spin-flip model with cached per-clause products: evaluating one
 * neighbor is O(1), a move touches only the clauses containing the spin.
 * The energy is used directly as the log target.
 */
class IsingXorModel final : public ProblemModel {
 public:
  explicit IsingXorModel(std::shared_ptr<const IsingXorInstance> inst);

  std::string kind() const override { return "ising3xor"; }
  std::size_t dimension() const override { return inst_->n; }
  void reset() override;

  double log_target() const override { return static_cast<double>(energy_); }
  std::vector<double> state() const override;
  void set_state(std::span<const double> s) override;
  std::uint64_t state_id() const override;

  std::size_t neighbor_count() const override { return inst_->n; }
  double neighbor_log_target(std::size_t i) const override;
  void step_to_neighbor(std::size_t i) override;
  std::optional<std::size_t> neighbor_matching(std::span<const double> target) const override;

  const std::vector<std::int8_t>& spins() const noexcept { return s_; }

 private:
  void rebuild_caches();

  std::shared_ptr<const IsingXorInstance> inst_;
  std::vector<std::int8_t> s_;
  std::vector<long long> clause_product_;   // coeff * s_a s_b s_c per clause
  std::vector<long long> spin_clause_sum_;  // sum of products over clauses containing the spin
  std::vector<std::vector<std::uint32_t>> spin_clauses_;
  long long energy_ = 0;
};

}  // namespace pnsopt
