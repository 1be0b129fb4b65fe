// Command-line front door: instance generation, single optimizer runs,
// experiment suites, time-to-solution studies, and plain-text reports.
//
// Exit codes: 0 success, 2 invalid configuration or flags, 3 I/O failure,
// 4 runtime failure (e.g. the chain reached an absorbing state).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnsopt/bench/experiment.hpp"
#include "pnsopt/bench/summary_io.hpp"
#include "pnsopt/bench/tts.hpp"
#include "pnsopt/errors.hpp"
#include "pnsopt/io/csv.hpp"
#include "pnsopt/problems/instance_io.hpp"
#include "pnsopt/version.hpp"

namespace {

using namespace pnsopt;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

double parse_number(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw config_error("");
    return value;
  } catch (const std::exception&) {
    throw config_error(what + ": cannot parse number '" + token + "'");
  }
}

/** `constant:<T>` or `geometric:<T0>:<T1>`; the token itself becomes the label. */
ScheduleSpec parse_schedule(const std::string& token) {
  const auto parts = split(token, ':');
  ScheduleSpec spec;
  spec.label = token;
  if (parts[0] == "constant" && parts.size() == 2) {
    spec.kind = ScheduleKind::Constant;
    spec.t_start = spec.t_end = parse_number(parts[1], "schedule");
  } else if (parts[0] == "geometric" && parts.size() == 3) {
    spec.kind = ScheduleKind::Geometric;
    spec.t_start = parse_number(parts[1], "schedule");
    spec.t_end = parse_number(parts[2], "schedule");
  } else {
    throw config_error("schedule: expected constant:<T> or geometric:<T0>:<T1>, got '" +
                       token + "'");
  }
  spec.validate();
  return spec;
}

PnsMethod parse_method(const std::string& name) {
  if (name == "A" || name == "a" || name == "random_every_step") {
    return PnsMethod::RandomEveryStep;
  }
  if (name == "B" || name == "b" || name == "random_periodic") {
    return PnsMethod::RandomPeriodic;
  }
  if (name == "C" || name == "c" || name == "block_every_step") {
    return PnsMethod::BlockEveryStep;
  }
  if (name == "D" || name == "d" || name == "block_periodic") {
    return PnsMethod::BlockPeriodic;
  }
  throw config_error("subset method: expected A, B, C or D, got '" + name + "'");
}

PnsStrategy strategy_for_method(PnsMethod method, double fraction, std::uint64_t period) {
  switch (method) {
    case PnsMethod::RandomEveryStep: return PnsStrategy::random_every_step(fraction);
    case PnsMethod::RandomPeriodic: return PnsStrategy::random_periodic(fraction, period);
    case PnsMethod::BlockEveryStep: return PnsStrategy::block_every_step();
    case PnsMethod::BlockPeriodic: return PnsStrategy::block_periodic(period);
  }
  throw config_error("unknown subset method");
}

/**
 * Algorithm token grammar for bench/tts lists:
 *   sa | rf | tabu:<L> | pns:<fraction>[:<A|B|C|D>] | pns:<C|D>
 * The token itself becomes the label, so summary rows are self-describing.
 */
AlgorithmSpec parse_algorithm(const std::string& token) {
  const auto parts = split(token, ':');
  AlgorithmSpec spec;
  spec.label = token;
  if (parts[0] == "sa" && parts.size() == 1) {
    spec.algorithm = OptAlgorithm::SimulatedAnnealing;
    return spec;
  }
  if (parts[0] == "rf" && parts.size() == 1) {
    spec.algorithm = OptAlgorithm::RejectionFree;
    return spec;
  }
  if (parts[0] == "tabu" && parts.size() == 2) {
    spec.algorithm = OptAlgorithm::TabuRejectionFree;
    spec.tabu_length = static_cast<std::uint64_t>(
        parse_number(parts[1], "tabu length"));
    return spec;
  }
  if (parts[0] == "pns" && (parts.size() == 2 || parts.size() == 3)) {
    spec.algorithm = OptAlgorithm::PartialNeighborSearch;
    // Block methods carry no fraction: pns:C / pns:D.
    if (parts.size() == 2 && (parts[1] == "C" || parts[1] == "c" || parts[1] == "D" ||
                              parts[1] == "d")) {
      spec.pns = strategy_for_method(parse_method(parts[1]), 0.5, 10);
      return spec;
    }
    const double fraction = parse_number(parts[1], "pns fraction");
    const PnsMethod method =
        parts.size() == 3 ? parse_method(parts[2]) : PnsMethod::RandomEveryStep;
    spec.pns = strategy_for_method(method, fraction, 10);
    return spec;
  }
  throw config_error(
      "algorithm: expected sa | rf | tabu:<L> | pns:<fraction>[:<method>], got '" + token +
      "'");
}

std::vector<ScheduleSpec> parse_schedule_list(const std::string& csv) {
  std::vector<ScheduleSpec> specs;
  for (const auto& token : split(csv, ',')) specs.push_back(parse_schedule(token));
  return specs;
}

std::vector<AlgorithmSpec> parse_algorithm_list(const std::string& csv) {
  std::vector<AlgorithmSpec> specs;
  for (const auto& token : split(csv, ',')) specs.push_back(parse_algorithm(token));
  return specs;
}

std::uint64_t time_derived_seed() {
  const auto now = std::chrono::system_clock::now().time_since_epoch().count();
  return splitmix64(static_cast<std::uint64_t>(now));
}

std::uint64_t file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  return fnv1a64(bytes.data(), bytes.size());
}

// --- generate ---------------------------------------------------------------

struct GenerateFlags {
  std::string kind;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
  double capacity = 100000.0;
  bool no_diagonal = false;
  double sigma = 0.1;
};

void cmd_generate(const GenerateFlags& flags) {
  ProblemSpec problem;
  problem.kind = flags.kind;
  problem.n = flags.n;
  problem.capacity = flags.capacity;
  problem.with_diagonal = !flags.no_diagonal;
  problem.step_sigma = flags.sigma;
  problem.validate();

  const AnyInstance instance = make_instance(problem, flags.seed);
  save_instance(instance, flags.out);

  std::ostringstream checksum;
  checksum << std::hex << std::setw(16) << std::setfill('0') << file_checksum(flags.out);
  std::cout << "kind " << instance_kind(instance) << "\n"
            << "n " << instance_dimension(instance) << "\n"
            << "file " << flags.out << "\n"
            << "checksum " << checksum.str() << "\n";
}

// --- run --------------------------------------------------------------------

struct RunFlags {
  std::string instance;
  std::string alg = "sa";
  double fraction = 0.5;
  std::string method = "A";
  std::uint64_t period = 10;
  std::size_t pairs = 10;
  std::uint64_t tabu_length = 0;
  std::string schedule = "constant:1";
  std::uint64_t iters = 0;
  std::optional<std::uint64_t> seed;
  std::string trace;
  bool trace_timing = false;
  std::optional<double> halt_at;
};

void cmd_run(const RunFlags& flags) {
  const AnyInstance instance = load_instance(flags.instance);
  auto model = make_model(instance);

  OptRunConfig config;
  if (flags.alg == "sa") {
    config.algorithm = OptAlgorithm::SimulatedAnnealing;
  } else if (flags.alg == "rf") {
    config.algorithm = OptAlgorithm::RejectionFree;
  } else if (flags.alg == "pns") {
    config.algorithm = OptAlgorithm::PartialNeighborSearch;
    PnsStrategy strategy =
        strategy_for_method(parse_method(flags.method), flags.fraction, flags.period);
    strategy.sample_pairs = flags.pairs;
    config.pns = strategy;
  } else if (flags.alg == "tabu") {
    config.algorithm = OptAlgorithm::TabuRejectionFree;
    config.tabu_length = flags.tabu_length;
  } else {
    throw config_error("run: unknown --alg '" + flags.alg + "' (sa, rf, pns, tabu)");
  }
  config.iterations = flags.iters;
  const ScheduleSpec schedule = parse_schedule(flags.schedule);
  config.schedule = schedule.realise(std::max<std::uint64_t>(flags.iters, 2));
  config.record_visits = !flags.trace.empty();
  config.halt_at_value = flags.halt_at;

  const std::uint64_t seed = flags.seed.value_or(time_derived_seed());
  std::cout << "SEED " << seed << "\n";

  RngBundle rngs(seed);
  model->reset();
  const OptTrace trace = run_optimizer(*model, config, rngs);

  if (!flags.trace.empty()) {
    std::ofstream out = open_output_file(flags.trace);
    write_opt_trace_csv(out, trace, flags.trace_timing);
    if (!out) throw io_error("write failure: " + flags.trace);
  }
  std::cout << "BEST " << format_double(trace.best_log_target) << " STEPS "
            << trace.steps_to_best << "\n";
}

// --- bench ------------------------------------------------------------------

struct BenchFlags {
  std::string spec_path;
  std::string kind = "qubo";
  std::size_t n = 0;
  std::string instance_file;
  double capacity = 100000.0;
  bool no_diagonal = false;
  double sigma = 0.1;
  std::string schedules = "geometric:10:0.1";
  std::string algs = "sa,rf";
  std::uint64_t reps = 10;
  std::string budget_mode = "evaluation";
  std::uint64_t budget = 0;
  bool fresh_instances = false;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned jobs = 1;
  bool timing = false;
};

ExperimentSpec bench_spec_from_flags(const BenchFlags& flags) {
  ExperimentSpec spec;
  spec.problem.kind = flags.kind;
  spec.problem.n = flags.n;
  spec.problem.instance_file = flags.instance_file;
  spec.problem.capacity = flags.capacity;
  spec.problem.with_diagonal = !flags.no_diagonal;
  spec.problem.step_sigma = flags.sigma;
  spec.schedules = parse_schedule_list(flags.schedules);
  spec.algorithms = parse_algorithm_list(flags.algs);
  spec.repetitions = flags.reps;
  if (flags.budget_mode == "evaluation") {
    spec.budget_mode = BudgetMode::EvaluationMatched;
  } else if (flags.budget_mode == "step") {
    spec.budget_mode = BudgetMode::StepMatched;
  } else {
    throw config_error("bench: --budget-mode must be evaluation or step");
  }
  spec.budget = flags.budget;
  spec.fresh_instance_per_repetition = flags.fresh_instances;
  return spec;
}

void cmd_bench(const BenchFlags& flags) {
  if (!flags.seed.has_value()) {
    throw config_error("bench: --seed is required");
  }
  ExperimentSpec spec = flags.spec_path.empty() ? bench_spec_from_flags(flags)
                                                : load_experiment_spec(flags.spec_path);
  spec.base_seed = *flags.seed;
  spec.validate();

  const RunSummary summary = run_experiment(spec, flags.jobs);
  summarize_to_files(summary, flags.out, flags.timing);
  std::cout << "wrote " << flags.out << "_samples.csv\n"
            << "wrote " << flags.out << "_summary.csv\n";
  if (flags.timing) std::cout << "wrote " << flags.out << "_timing.csv\n";
  std::cout << "wrote " << flags.out << "_manifest.json\n";
}

// --- tts --------------------------------------------------------------------

struct TtsFlags {
  std::string spec_path;
  std::string sizes = "12";
  std::string algs = "rf,pns:0.5";
  std::string schedule = "constant:1";
  std::uint64_t instances = 10;
  std::uint64_t budget = 1000000;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned jobs = 1;
  bool timing = false;
};

TtsSpec tts_spec_from_flags(const TtsFlags& flags) {
  TtsSpec spec;
  spec.sizes.clear();
  for (const auto& token : split(flags.sizes, ',')) {
    spec.sizes.push_back(static_cast<std::size_t>(parse_number(token, "tts sizes")));
  }
  spec.algorithms = parse_algorithm_list(flags.algs);
  spec.schedule = parse_schedule(flags.schedule);
  spec.instances = flags.instances;
  spec.budget = flags.budget;
  return spec;
}

void cmd_tts(const TtsFlags& flags) {
  if (!flags.seed.has_value()) {
    throw config_error("tts: --seed is required");
  }
  TtsSpec spec =
      flags.spec_path.empty() ? tts_spec_from_flags(flags) : load_tts_spec(flags.spec_path);
  spec.base_seed = *flags.seed;
  spec.validate();

  const TtsResult result = run_tts(spec, flags.jobs);
  tts_to_files(result, flags.out, flags.timing);
  std::cout << "wrote " << flags.out << "_samples.csv\n"
            << "wrote " << flags.out << "_summary.csv\n";
  if (flags.timing) std::cout << "wrote " << flags.out << "_timing.csv\n";
  std::cout << "wrote " << flags.out << "_manifest.json\n";
}

// --- report -----------------------------------------------------------------

struct ReportFlags {
  std::string summary;
  std::string plot;
};

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split(line, ','));
  }
  if (rows.empty()) throw io_error("report: empty summary file " + path);
  return rows;
}

void cmd_report(const ReportFlags& flags) {
  const auto rows = read_csv(flags.summary);
  const auto& header = rows.front();

  std::vector<std::size_t> widths(header.size());
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw io_error("report: ragged row in " + flags.summary);
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::cout << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
    }
    std::cout << "\n";
    if (&row == &rows.front()) {
      std::size_t total = 0;
      for (std::size_t w : widths) total += w + 2;
      std::cout << std::string(total, '-') << "\n";
    }
  }

  if (!flags.plot.empty()) {
    std::ofstream out = open_output_file(flags.plot);
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        out << row[c] << (c + 1 == row.size() ? '\n' : ',');
      }
    }
    if (!out) throw io_error("write failure: " + flags.plot);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic-search toolkit: annealing, rejection-free and partial "
               "neighbor chains over binary and simplex-constrained problems"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Write a problem instance JSON file");
  generate->add_option("--kind", gen.kind, "qubo | knapsack | ising3xor | simplexqp")
      ->required();
  generate->add_option("--n", gen.n, "Problem dimension")->required();
  generate->add_option("--seed", gen.seed, "Generator seed")->required();
  generate->add_option("--out", gen.out, "Output path")->required();
  generate->add_option("--capacity", gen.capacity, "Knapsack capacity");
  generate->add_flag("--no-diagonal", gen.no_diagonal, "Zero linear terms (qubo)");
  generate->add_option("--sigma", gen.sigma, "Proposal step scale (simplexqp)");
  generate->callback([&gen] { cmd_generate(gen); });

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "One optimizer run on an instance file");
  run_cmd->add_option("--instance", run.instance, "Instance JSON path")->required();
  run_cmd->add_option("--alg", run.alg, "sa | rf | pns | tabu")->required();
  run_cmd->add_option("--fraction", run.fraction, "Neighbor fraction (pns)");
  run_cmd->add_option("--method", run.method, "Subset method A|B|C|D (pns)");
  run_cmd->add_option("--period", run.period, "Subset refresh period (methods B, D)");
  run_cmd->add_option("--pairs", run.pairs, "Candidate pairs per step (simplexqp pns)");
  run_cmd->add_option("--tabu-length", run.tabu_length, "Excluded recent states (tabu)");
  run_cmd->add_option("--schedule", run.schedule,
                      "constant:<T> or geometric:<T0>:<T1> (default constant:1)");
  run_cmd->add_option("--iters", run.iters, "Step count")->required();
  run_cmd->add_option("--seed", run.seed, "Seed (time-derived and echoed when omitted)");
  run_cmd->add_option("--trace", run.trace, "Write the visit log CSV here");
  run_cmd->add_flag("--trace-timing", run.trace_timing,
                    "Include wall times in the trace CSV");
  run_cmd->add_option("--halt-at", run.halt_at, "Stop once the best value reaches this");
  run_cmd->callback([&run] { cmd_run(run); });

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Schedule x algorithm comparison grid");
  bench_cmd->add_option("--spec", bench.spec_path, "Experiment spec or manifest JSON");
  bench_cmd->add_option("--kind", bench.kind, "qubo | knapsack | ising3xor | simplexqp");
  bench_cmd->add_option("--n", bench.n, "Problem dimension");
  bench_cmd->add_option("--instance", bench.instance_file, "Pinned instance JSON");
  bench_cmd->add_option("--capacity", bench.capacity, "Knapsack capacity");
  bench_cmd->add_flag("--no-diagonal", bench.no_diagonal, "Zero linear terms (qubo)");
  bench_cmd->add_option("--sigma", bench.sigma, "Proposal step scale (simplexqp)");
  bench_cmd->add_option("--schedules", bench.schedules, "Comma list of schedule tokens");
  bench_cmd->add_option("--algs", bench.algs, "Comma list of algorithm tokens");
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell");
  bench_cmd->add_option("--budget-mode", bench.budget_mode, "evaluation | step");
  bench_cmd->add_option("--budget", bench.budget, "Evaluations (or steps) per run");
  bench_cmd->add_flag("--fresh-instances", bench.fresh_instances,
                      "New instance per repetition");
  bench_cmd->add_option("--seed", bench.seed, "Base seed (required)");
  bench_cmd->add_option("--out", bench.out, "Output file prefix")->required();
  bench_cmd->add_option("--jobs", bench.jobs, "Worker threads");
  bench_cmd->add_flag("--timing", bench.timing, "Also write wall-time means");
  bench_cmd->callback([&bench] { cmd_bench(bench); });

  TtsFlags tts;
  auto* tts_cmd = app.add_subcommand("tts", "Time-to-solution study on planted instances");
  tts_cmd->add_option("--spec", tts.spec_path, "TTS spec or manifest JSON");
  tts_cmd->add_option("--sizes", tts.sizes, "Comma list of problem sizes");
  tts_cmd->add_option("--algs", tts.algs, "Comma list of algorithm tokens");
  tts_cmd->add_option("--schedule", tts.schedule, "Schedule token");
  tts_cmd->add_option("--instances", tts.instances, "Instances per size");
  tts_cmd->add_option("--budget", tts.budget, "Evaluation budget per run");
  tts_cmd->add_option("--seed", tts.seed, "Base seed (required)");
  tts_cmd->add_option("--out", tts.out, "Output file prefix")->required();
  tts_cmd->add_option("--jobs", tts.jobs, "Worker threads");
  tts_cmd->add_flag("--timing", tts.timing, "Also write wall-time medians");
  tts_cmd->callback([&tts] { cmd_tts(tts); });

  ReportFlags report;
  auto* report_cmd = app.add_subcommand("report", "Render a summary CSV as a text table");
  report_cmd->add_option("--summary", report.summary, "Summary CSV from bench or tts")
      ->required();
  report_cmd->add_option("--plot", report.plot, "Also write a plot-ready CSV here");
  report_cmd->callback([&report] { cmd_report(report); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
