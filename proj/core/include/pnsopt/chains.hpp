#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pnsopt/cooling.hpp"
#include "pnsopt/problem_model.hpp"
#include "pnsopt/rng.hpp"

namespace pnsopt {

/** A step-by-step chain realisation: states[k] is the state after k steps. */
struct ChainTrace {
  std::vector<std::uint64_t> states;
  std::vector<double> log_targets;
};

/**
 * A jump-chain realisation: each visited state, how many original-chain
 * steps it absorbed (its multiplicity), its log target, and, when produced
 * by a rejection-free run, the exact per-state escape probability.
 */
struct JumpChainRecord {
  std::vector<std::uint64_t> states;
  std::vector<std::uint64_t> multiplicities;
  std::vector<double> log_targets;
  std::vector<double> escape_probs;  // empty when not available
};

/**
 * Classic accept/reject chain: per step a neighbor is drawn from the
 * proposal, then accepted with probability min{1, ratio^(1/T(k))}. The trace
 * has steps+1 entries, starting with the initial state, which must carry
 * positive mass. Consumes one proposal draw and one acceptance draw per step.
 */
ChainTrace run_metropolis(ProblemModel& model, std::uint64_t steps,
                          const CoolingSchedule& schedule, RngBundle& rngs);

/**
 * Rejection-free sampling walk: per visited state the full neighbor weight
 * vector q(Y) = Q(x,Y) * min{1, pi(Y)/pi(x)} is evaluated, the next state is
 * picked proportionally, and the holding multiplicity is drawn as
 * 1 + Geometric(sum q). Produces exactly `jumps` records; consecutive states
 * always differ. Throws absorbing_state_error if no neighbor has mass.
 */
JumpChainRecord run_rejection_free_sampling(ProblemModel& model, std::uint64_t jumps,
                                            RngBundle& rngs);

/**
 * Collapses consecutive repeats of a trace into (state, run-length) records;
 * the inverse view of a jump chain. Escape probabilities are not recoverable
 * and stay empty.
 */
JumpChainRecord jump_collapse(const ChainTrace& trace);

/**
 * Multiplicity-weighted average sum(M_k h(J_k)) / sum(M_k); equals the plain
 * trace average of h when the record came from jump_collapse.
 */
double weighted_expectation(const JumpChainRecord& record,
                            const std::function<double(std::uint64_t)>& h);

}  // namespace pnsopt
