#include "pnsopt/chains.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pnsopt/categorical.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/log_weight.hpp"
#include "pnsopt/multiplicity.hpp"

namespace pnsopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_feasible_start(const ProblemModel& model) {
  if (model.log_target() == kNegInf) {
    throw std::invalid_argument(model.kind() + ": initial state has zero target mass");
  }
}
}  // namespace

ChainTrace run_metropolis(ProblemModel& model, std::uint64_t steps,
                          const CoolingSchedule& schedule, RngBundle& rngs) {
  require_feasible_start(model);
  ChainTrace trace;
  trace.states.reserve(steps + 1);
  trace.log_targets.reserve(steps + 1);
  trace.states.push_back(model.state_id());
  trace.log_targets.push_back(model.log_target());

  for (std::uint64_t k = 0; k < steps; ++k) {
    const double temp = schedule.temperature_at(k);
    const std::size_t i = propose_neighbor(model, rngs.proposal);
    const double log_acc =
        log_acceptance(model.log_target(), model.neighbor_log_target(i), temp).value;
    if (rngs.select.uniform01() < std::exp(log_acc)) model.step_to_neighbor(i);
    trace.states.push_back(model.state_id());
    trace.log_targets.push_back(model.log_target());
  }
  return trace;
}

JumpChainRecord run_rejection_free_sampling(ProblemModel& model, std::uint64_t jumps,
                                            RngBundle& rngs) {
  require_feasible_start(model);
  JumpChainRecord record;
  record.states.reserve(jumps);
  record.multiplicities.reserve(jumps);
  record.log_targets.reserve(jumps);
  record.escape_probs.reserve(jumps);

  std::vector<double> log_q;
  for (std::uint64_t k = 0; k < jumps; ++k) {
    const std::size_t count = model.neighbor_count();
    const double current = model.log_target();
    log_q.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double acc = log_acceptance(current, model.neighbor_log_target(i), 1.0).value;
      log_q[i] = model.neighbor_log_proposal(i) + acc;
    }
    const double log_escape = log_sum_exp(log_q);
    if (log_escape == kNegInf) {
      throw absorbing_state_error(model.kind() + ": no neighbor carries target mass");
    }
    const double escape = std::min(1.0, std::exp(log_escape));

    record.states.push_back(model.state_id());
    record.log_targets.push_back(current);
    record.escape_probs.push_back(escape);

    const std::size_t next = categorical_pick(log_q, rngs.select);
    record.multiplicities.push_back(sample_multiplicity(escape, rngs.select));
    model.step_to_neighbor(next);
  }
  return record;
}

JumpChainRecord jump_collapse(const ChainTrace& trace) {
  if (trace.states.size() != trace.log_targets.size()) {
    throw std::invalid_argument("jump_collapse: trace arrays disagree in length");
  }
  JumpChainRecord record;
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    if (!record.states.empty() && record.states.back() == trace.states[k]) {
      ++record.multiplicities.back();
      continue;
    }
    record.states.push_back(trace.states[k]);
    record.log_targets.push_back(trace.log_targets[k]);
    record.multiplicities.push_back(1);
  }
  return record;
}

double weighted_expectation(const JumpChainRecord& record,
                            const std::function<double(std::uint64_t)>& h) {
  if (record.states.empty()) {
    throw std::invalid_argument("weighted_expectation: empty record");
  }
  if (record.states.size() != record.multiplicities.size()) {
    throw std::invalid_argument("weighted_expectation: multiplicities do not align");
  }
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    const double m = static_cast<double>(record.multiplicities[k]);
    weighted += m * h(record.states[k]);
    total += m;
  }
  return weighted / total;
}

}  // namespace pnsopt
