// Chain-level tests: trace collapse into jump records, multiplicity-weighted
// averages, accept/reject occupancy on a two-state target, and the
// rejection-free sampling walk checked against exact per-state escape
// probabilities and closed-form jump laws on small graphs.

#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "pnsopt/chains.hpp"
#include "pnsopt/cooling.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/optimize.hpp"
#include "pnsopt/problems/toy_graph.hpp"
#include "pnsopt/rng.hpp"
#include "support/stats.hpp"
#include "support/tabular_model.hpp"

using namespace pnsopt;
using testsupport::TabularModel;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/** Complete graph over the given unnormalised weights. */
TabularModel complete_graph(const std::vector<double>& weights, std::size_t start = 0) {
  const std::size_t n = weights.size();
  std::vector<double> log_pi(n);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    log_pi[i] = std::log(weights[i]);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) adj[i].push_back(j);
    }
  }
  return TabularModel(log_pi, adj, start);
}

}  // namespace

TEST_CASE("jump_collapse reproduces the worked run-length example") {
  ChainTrace trace;
  trace.states = {0, 1, 1, 1, 0, 0, 2, 2, 2, 2, 3, 3, 0};
  for (const auto s : trace.states) {
    trace.log_targets.push_back(10.0 + static_cast<double>(s));
  }

  const JumpChainRecord record = jump_collapse(trace);
  CHECK(record.states == std::vector<std::uint64_t>{0, 1, 0, 2, 3, 0});
  CHECK(record.multiplicities == std::vector<std::uint64_t>{1, 3, 2, 4, 2, 1});
  CHECK(record.log_targets == std::vector<double>{10.0, 11.0, 10.0, 12.0, 13.0, 10.0});
  CHECK(record.escape_probs.empty());
}

TEST_CASE("jump_collapse edge cases") {
  CHECK(jump_collapse(ChainTrace{}).states.empty());

  ChainTrace single;
  single.states = {7};
  single.log_targets = {1.5};
  const auto record = jump_collapse(single);
  CHECK(record.states == std::vector<std::uint64_t>{7});
  CHECK(record.multiplicities == std::vector<std::uint64_t>{1});

  ChainTrace ragged;
  ragged.states = {1, 2};
  ragged.log_targets = {0.0};
  CHECK_THROWS_AS((void)jump_collapse(ragged), std::invalid_argument);
}

TEST_CASE("weighted_expectation: hand-computed average and error cases") {
  JumpChainRecord record;
  record.states = {0, 1};
  record.multiplicities = {2, 3};
  record.log_targets = {0.0, 0.0};

  const auto identity = [](std::uint64_t s) { return static_cast<double>(s); };
  CHECK(weighted_expectation(record, identity) == doctest::Approx(0.6).epsilon(1e-15));

  const auto indicator0 = [](std::uint64_t s) { return s == 0 ? 1.0 : 0.0; };
  CHECK(weighted_expectation(record, indicator0) == doctest::Approx(0.4).epsilon(1e-15));

  CHECK_THROWS_AS((void)weighted_expectation(JumpChainRecord{}, identity),
                  std::invalid_argument);
  record.multiplicities.pop_back();
  CHECK_THROWS_AS((void)weighted_expectation(record, identity), std::invalid_argument);
}

TEST_CASE("collapsing a trace preserves its plain time average") {
  TabularModel model = complete_graph({1.0, 2.0, 3.0, 4.0});
  RngBundle rngs(701);
  const ChainTrace trace = run_metropolis(model, 5000, CoolingSchedule::constant(1.0), rngs);
  REQUIRE(trace.states.size() == 5001);

  const auto h = [](std::uint64_t s) { return static_cast<double>(s * s); };
  double plain = 0.0;
  for (const auto s : trace.states) plain += h(s);
  plain /= static_cast<double>(trace.states.size());

  const double collapsed = weighted_expectation(jump_collapse(trace), h);
  CHECK(collapsed == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("accept/reject chain matches the two-state stationary law") {
  // pi proportional to {1, 3}: the heavy state holds 0.75 of the mass.
  TabularModel model(std::vector<double>{std::log(1.0), std::log(3.0)},
                     {{1}, {0}});
  RngBundle rngs(702);
  const std::uint64_t steps = 100000;
  const ChainTrace trace = run_metropolis(model, steps, CoolingSchedule::constant(1.0), rngs);

  std::uint64_t heavy = 0;
  for (const auto s : trace.states) heavy += (s == 1);
  const double occupancy = static_cast<double>(heavy) / static_cast<double>(trace.states.size());
  CHECK(occupancy == doctest::Approx(0.75).epsilon(0.015));
}

TEST_CASE("accept/reject trace semantics: start, adjacency, determinism") {
  TabularModel model = complete_graph({1.0, 5.0, 2.0}, 2);
  RngBundle rngs(703);
  const ChainTrace trace = run_metropolis(model, 300, CoolingSchedule::constant(0.7), rngs);
  REQUIRE(trace.states.size() == 301);
  CHECK(trace.states.front() == 2);
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    CHECK(trace.log_targets[k] == model.log_pi()[trace.states[k]]);
  }

  // Same seed, same realisation; a different seed diverges.
  TabularModel again = complete_graph({1.0, 5.0, 2.0}, 2);
  RngBundle rngs_again(703);
  const ChainTrace replay = run_metropolis(again, 300, CoolingSchedule::constant(0.7), rngs_again);
  CHECK(replay.states == trace.states);

  TabularModel other = complete_graph({1.0, 5.0, 2.0}, 2);
  RngBundle rngs_other(704);
  const ChainTrace diverged = run_metropolis(other, 300, CoolingSchedule::constant(0.7), rngs_other);
  CHECK(diverged.states != trace.states);
}

TEST_CASE("chains refuse a zero-mass initial state") {
  TabularModel model(std::vector<double>{kNegInf, 0.0}, {{1}, {0}});
  RngBundle rngs(705);
  CHECK_THROWS_AS((void)run_metropolis(model, 10, CoolingSchedule::constant(1.0), rngs),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)run_rejection_free_sampling(model, 10, rngs), std::invalid_argument);
}

TEST_CASE("rejection-free sampling never repeats a state consecutively") {
  TabularModel model = complete_graph({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  RngBundle rngs(706);
  const JumpChainRecord record = run_rejection_free_sampling(model, 5000, rngs);
  REQUIRE(record.states.size() == 5000);
  REQUIRE(record.multiplicities.size() == 5000);
  REQUIRE(record.escape_probs.size() == 5000);
  for (std::size_t k = 1; k < record.states.size(); ++k) {
    CHECK(record.states[k] != record.states[k - 1]);
  }
  for (const auto m : record.multiplicities) CHECK(m >= 1);
}

TEST_CASE("recorded escape probabilities equal the direct recomputation") {
  const std::vector<double> weights{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  TabularModel model = complete_graph(weights);
  RngBundle rngs(707);
  const JumpChainRecord record = run_rejection_free_sampling(model, 2000, rngs);

  // Recompute escape at each visited state: mean over uniform proposals of
  // the clipped acceptance ratios.
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    const std::size_t s = static_cast<std::size_t>(record.states[k]);
    double escape = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (j == s) continue;
      escape += std::min(1.0, weights[j] / weights[s]) / 5.0;
    }
    escape = std::min(1.0, escape);
    CHECK(record.escape_probs[k] == doctest::Approx(escape).epsilon(1e-12));
    CHECK(record.log_targets[k] == doctest::Approx(std::log(weights[s])).epsilon(1e-12));
  }
}

TEST_CASE("multiplicity-weighted expectation reproduces the target mean") {
  const std::vector<double> weights{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  TabularModel model = complete_graph(weights);
  RngBundle rngs(708);
  const JumpChainRecord record = run_rejection_free_sampling(model, 100000, rngs);

  // E_pi[h] with h(s) = s and pi(s) = (s+1)/21: exactly 70/21.
  const auto identity = [](std::uint64_t s) { return static_cast<double>(s); };
  const double exact = 70.0 / 21.0;
  CHECK(std::abs(weighted_expectation(record, identity) - exact) < 0.02);
}

TEST_CASE("the one-step jump law matches hand-computed distributions") {
  const std::vector<double> weights{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};

  // From the lightest state every move is uphill: the jump law is uniform.
  TabularModel bottom = complete_graph(weights, 0);
  const auto from_bottom = jump_distribution(bottom, 1.0);
  REQUIRE(from_bottom.size() == 5);
  for (const double p : from_bottom) CHECK(p == doctest::Approx(0.2).epsilon(1e-12));

  // From the heaviest state the law is proportional to the neighbor weights.
  TabularModel top = complete_graph(weights, 5);
  const auto from_top = jump_distribution(top, 1.0);
  REQUIRE(from_top.size() == 5);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(from_top[j] == doctest::Approx(weights[j] / 15.0).epsilon(1e-12));
  }
}

TEST_CASE("two-hub toy graph: jump law and escape probability in closed form") {
  auto inst = std::make_shared<ToyLocalMaxInstance>();
  ToyGraphModel model(inst);
  model.reset();

  // From a hub the competing hub takes mass 1/(1 + n * spoke/hub * 1) with
  // acceptance 1 across and 1e-4 down to each of the 10 leaves.
  const auto law = jump_distribution(model, 1.0);
  REQUIRE(law.size() == 11);
  CHECK(std::abs(law[0] - 1.0 / 1.001) < 1e-12);
  for (std::size_t i = 1; i <= 10; ++i) {
    CHECK(std::abs(law[i] - 1e-4 / 1.001) < 1e-12);
  }

  // The rejection-free walk records the exact escape probability per state:
  // (1 + 10 * 1e-4) / 11 at hubs, exactly 1 at leaves.
  RngBundle rngs(709);
  const JumpChainRecord record = run_rejection_free_sampling(model, 20000, rngs);
  const double hub_escape = 1.001 / 11.0;
  std::vector<std::uint64_t> hub_multiplicities;
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    if (record.states[k] < 2) {
      CHECK(record.escape_probs[k] == doctest::Approx(hub_escape).epsilon(1e-12));
      hub_multiplicities.push_back(record.multiplicities[k]);
    } else {
      CHECK(record.escape_probs[k] == 1.0);
      CHECK(record.multiplicities[k] == 1);
    }
  }

  // Hub multiplicities follow 1 + Geometric(escape): a distribution-level
  // goodness-of-fit check at significance 0.001.
  REQUIRE(hub_multiplicities.size() > 10000);
  const double ks = teststat::ks_statistic_shifted_geometric(hub_multiplicities, hub_escape);
  CHECK(ks < teststat::ks_critical_001(hub_multiplicities.size()));

  // Mean holding time at a hub is 1/escape.
  double mean = 0.0;
  for (const auto m : hub_multiplicities) mean += static_cast<double>(m);
  mean /= static_cast<double>(hub_multiplicities.size());
  const double expected = 1.0 / hub_escape;
  const double sd = std::sqrt(1.0 - hub_escape) / hub_escape;
  const double se = sd / std::sqrt(static_cast<double>(hub_multiplicities.size()));
  CHECK(std::abs(mean - expected) < 4.0 * se);
}

TEST_CASE("a state with no reachable mass raises absorbing_state_error") {
  TabularModel model(std::vector<double>{0.0, kNegInf}, {{1}, {0}});
  RngBundle rngs(710);
  CHECK_THROWS_AS((void)run_rejection_free_sampling(model, 5, rngs), absorbing_state_error);
}

TEST_CASE("rejection-free sampling replays bit-for-bit under the same seed") {
  TabularModel model = complete_graph({1.0, 4.0, 2.0, 8.0});
  RngBundle rngs(711);
  const JumpChainRecord once = run_rejection_free_sampling(model, 1000, rngs);

  TabularModel again = complete_graph({1.0, 4.0, 2.0, 8.0});
  RngBundle rngs_again(711);
  const JumpChainRecord twice = run_rejection_free_sampling(again, 1000, rngs_again);

  CHECK(once.states == twice.states);
  CHECK(once.multiplicities == twice.multiplicities);
  CHECK(once.log_targets == twice.log_targets);
  CHECK(once.escape_probs == twice.escape_probs);
}
