#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pnsopt/rng.hpp"

namespace pnsopt {

/**
 * A target distribution together with its move structure, exposed as a
 * stateful cursor: the model holds the current state and answers questions
 * about it and its neighbors. Implementations keep incremental caches so
 * that evaluating one neighbor is O(1) where the problem allows it.
 *
 * Two neighborhood styles exist:
 *  - enumerable: a fixed finite neighbor list (index 0 .. neighbor_count()-1),
 *    usually single-variable flips;
 *  - sampled: candidate batches drawn from a proposal (continuous domains).
 * A model implements at least one; capability queries tell callers which.
 */
class ProblemModel {
 public:
  virtual ~ProblemModel() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t dimension() const = 0;

  /** Restores the canonical deterministic initial state. */
  virtual void reset() = 0;

  /** log pi of the current state; -inf when the state carries no mass. */
  virtual double log_target() const = 0;

  /** Copy of the current state in the model's generic encoding. */
  virtual std::vector<double> state() const = 0;
  virtual void set_state(std::span<const double> s) = 0;

  /**
   * Compact identifier of the current state. Exact (decodable) when the
   * state fits into 64 bits, otherwise a stable digest.
   */
  virtual std::uint64_t state_id() const = 0;

  // --- enumerable neighborhoods -------------------------------------------

  virtual bool enumerable_neighbors() const { return true; }
  virtual std::size_t neighbor_count() const = 0;
  virtual double neighbor_log_target(std::size_t i) const = 0;

  /** log Q(current -> neighbor i); uniform by default. */
  virtual double neighbor_log_proposal(std::size_t i) const {
    (void)i;
    return -std::log(static_cast<double>(neighbor_count()));
  }

  /** True when the proposal over neighbors is uniform (enables O(1) draws). */
  virtual bool uniform_proposal() const { return true; }

  virtual void step_to_neighbor(std::size_t i) = 0;

  /**
   * Which neighbor of the current state equals `target`, if any. Needed by
   * tabu exclusion; implemented by every enumerable model.
   */
  virtual std::optional<std::size_t> neighbor_matching(std::span<const double> target) const = 0;

  // --- sampled candidate batches ------------------------------------------

  virtual bool sampled_candidates() const { return false; }

  /**
   * Draws `pairs` proposal pairs (a move and its mirrored counterpart),
   * buffers them internally, fills `log_targets` with the 2*pairs candidate
   * log targets (infeasible candidates get -inf), and returns the count.
   */
  virtual std::size_t sample_candidate_pairs(std::size_t pairs, RngStream& rng,
                                             std::vector<double>& log_targets) {
    (void)pairs;
    (void)rng;
    (void)log_targets;
    throw std::logic_error(kind() + ": no sampled candidate support");
  }

  /** Adopts candidate i from the most recent batch. */
  virtual void step_to_candidate(std::size_t i) {
    (void)i;
    throw std::logic_error(kind() + ": no sampled candidate support");
  }
};

/**
 * Draws a neighbor index from the model's proposal distribution; O(1) for
 * uniform proposals, a categorical draw otherwise.
 */
std::size_t propose_neighbor(ProblemModel& model, RngStream& rng);

/** FNV-1a over raw bytes; the digest used for wide state identifiers. */
inline std::uint64_t fnv1a64(const void* data, std::size_t size,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = seed;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

/** Packs up to 64 binary variables exactly; hashes wider vectors. */
inline std::uint64_t binary_state_id(std::span<const std::uint8_t> bits) {
  if (bits.size() <= 64) {
    std::uint64_t id = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) id |= (std::uint64_t{1} << i);
    }
    return id;
  }
  return fnv1a64(bits.data(), bits.size());
}

}  // namespace pnsopt
