#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pnsopt/bench/experiment.hpp"

namespace pnsopt {

/**
 * Time-to-solution study on planted parity instances. For every size in
 * `sizes`, `instances` fresh problems are generated with known optimum n;
 * each algorithm runs once per instance with an evaluation budget and halts
 * the moment the planted optimum is reached. The headline statistic is the
 * median evaluation count over the solved runs of each (size, algorithm)
 * cell.
 */
struct TtsSpec {
  std::vector<std::size_t> sizes;
  std::vector<AlgorithmSpec> algorithms;
  ScheduleSpec schedule{"flat", ScheduleKind::Constant, 1.0, 1.0};
  std::uint64_t instances = 10;  // per size
  std::uint64_t budget = 1'000'000;  // evaluations per run
  std::uint64_t base_seed = 0;

  void validate() const;
};

/** One run: one instance, one algorithm. */
struct TtsRow {
  std::size_t n = 0;
  std::uint64_t instance = 0;
  std::string algorithm;
  bool solved = false;
  std::uint64_t steps = 0;
  std::uint64_t evaluations = 0;  // consumed up to the halt (or the budget)
  double wall_time = 0.0;
};

/** Medians over the solved runs of one (size, algorithm) cell. */
struct TtsCell {
  std::size_t n = 0;
  std::string algorithm;
  std::uint64_t attempts = 0;
  std::uint64_t solved = 0;
  double median_evaluations = 0.0;  // NaN when nothing solved
  double median_steps = 0.0;
  double median_wall_time = 0.0;
};

struct TtsResult {
  TtsSpec spec;
  std::vector<TtsRow> rows;    // ordered by (size, instance, algorithm)
  std::vector<TtsCell> cells;  // ordered by (size, algorithm)
};

TtsResult run_tts(const TtsSpec& spec, unsigned jobs = 1);

}  // namespace pnsopt
