#include "pnsopt/bench/summary_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pnsopt/errors.hpp"
#include "pnsopt/io/csv.hpp"
#include "pnsopt/version.hpp"

namespace pnsopt {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string algorithm_name(OptAlgorithm a) {
  switch (a) {
    case OptAlgorithm::SimulatedAnnealing: return "sa";
    case OptAlgorithm::RejectionFree: return "rf";
    case OptAlgorithm::PartialNeighborSearch: return "pns";
    case OptAlgorithm::TabuRejectionFree: return "tabu";
  }
  throw config_error("unknown algorithm");
}

OptAlgorithm algorithm_from_name(const std::string& name) {
  if (name == "sa") return OptAlgorithm::SimulatedAnnealing;
  if (name == "rf") return OptAlgorithm::RejectionFree;
  if (name == "pns") return OptAlgorithm::PartialNeighborSearch;
  if (name == "tabu") return OptAlgorithm::TabuRejectionFree;
  throw config_error("unknown algorithm name '" + name + "'");
}

std::string method_name(PnsMethod m) {
  switch (m) {
    case PnsMethod::RandomEveryStep: return "random_every_step";
    case PnsMethod::RandomPeriodic: return "random_periodic";
    case PnsMethod::BlockEveryStep: return "block_every_step";
    case PnsMethod::BlockPeriodic: return "block_periodic";
  }
  throw config_error("unknown subset method");
}

PnsMethod method_from_name(const std::string& name) {
  if (name == "random_every_step") return PnsMethod::RandomEveryStep;
  if (name == "random_periodic") return PnsMethod::RandomPeriodic;
  if (name == "block_every_step") return PnsMethod::BlockEveryStep;
  if (name == "block_periodic") return PnsMethod::BlockPeriodic;
  throw config_error("unknown subset method '" + name + "'");
}

json pns_to_json(const PnsStrategy& pns) {
  json j;
  j["method"] = method_name(pns.method);
  j["fraction"] = pns.subset_fraction;
  j["period"] = pns.refresh_period;
  j["sample_pairs"] = pns.sample_pairs;
  if (pns.partition.has_value()) {
    j["partition"] = json::array({pns.partition->first, pns.partition->second});
  }
  return j;
}

PnsStrategy pns_from_json(const json& j) {
  PnsStrategy pns;
  pns.method = method_from_name(j.at("method").get<std::string>());
  pns.subset_fraction = j.at("fraction").get<double>();
  pns.refresh_period = j.at("period").get<std::uint64_t>();
  if (j.contains("sample_pairs")) pns.sample_pairs = j.at("sample_pairs").get<std::size_t>();
  if (j.contains("partition")) {
    const auto& p = j.at("partition");
    if (!p.is_array() || p.size() != 2) {
      throw config_error("pns partition must be a pair of index arrays");
    }
    pns.partition = {p[0].get<std::vector<std::size_t>>(),
                     p[1].get<std::vector<std::size_t>>()};
  }
  return pns;
}

json algorithm_to_json(const AlgorithmSpec& a) {
  json j;
  j["label"] = a.label;
  j["algorithm"] = algorithm_name(a.algorithm);
  j["tabu_length"] = a.tabu_length;
  if (a.pns.has_value()) j["pns"] = pns_to_json(*a.pns);
  return j;
}

AlgorithmSpec algorithm_from_json(const json& j) {
  AlgorithmSpec a;
  a.label = j.at("label").get<std::string>();
  a.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
  if (j.contains("tabu_length")) a.tabu_length = j.at("tabu_length").get<std::uint64_t>();
  if (j.contains("pns")) a.pns = pns_from_json(j.at("pns"));
  return a;
}

json schedule_to_json(const ScheduleSpec& s) {
  json j;
  j["label"] = s.label;
  j["kind"] = s.kind == ScheduleKind::Constant ? "constant" : "geometric";
  j["t_start"] = s.t_start;
  j["t_end"] = s.t_end;
  return j;
}

ScheduleSpec schedule_from_json(const json& j) {
  ScheduleSpec s;
  s.label = j.at("label").get<std::string>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    s.kind = ScheduleKind::Constant;
  } else if (kind == "geometric") {
    s.kind = ScheduleKind::Geometric;
  } else {
    throw config_error("unknown schedule kind '" + kind + "'");
  }
  s.t_start = j.at("t_start").get<double>();
  s.t_end = j.value("t_end", s.t_start);
  return s;
}

json problem_to_json(const ProblemSpec& p) {
  json j;
  j["kind"] = p.kind;
  j["n"] = p.n;
  j["capacity"] = p.capacity;
  j["with_diagonal"] = p.with_diagonal;
  j["step_sigma"] = p.step_sigma;
  if (!p.instance_file.empty()) j["instance_file"] = p.instance_file;
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec p;
  p.kind = j.at("kind").get<std::string>();
  p.n = j.at("n").get<std::size_t>();
  p.capacity = j.value("capacity", p.capacity);
  p.with_diagonal = j.value("with_diagonal", p.with_diagonal);
  p.step_sigma = j.value("step_sigma", p.step_sigma);
  p.instance_file = j.value("instance_file", std::string{});
  return p;
}

json experiment_to_json_object(const ExperimentSpec& spec) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "experiment";
  j["problem"] = problem_to_json(spec.problem);
  j["schedules"] = json::array();
  for (const auto& s : spec.schedules) j["schedules"].push_back(schedule_to_json(s));
  j["algorithms"] = json::array();
  for (const auto& a : spec.algorithms) j["algorithms"].push_back(algorithm_to_json(a));
  j["repetitions"] = spec.repetitions;
  j["base_seed"] = spec.base_seed;
  j["budget_mode"] =
      spec.budget_mode == BudgetMode::EvaluationMatched ? "evaluation" : "step";
  j["budget"] = spec.budget;
  j["fresh_instance_per_repetition"] = spec.fresh_instance_per_repetition;
  return j;
}

json tts_to_json_object(const TtsSpec& spec) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = "tts";
  j["sizes"] = spec.sizes;
  j["algorithms"] = json::array();
  for (const auto& a : spec.algorithms) j["algorithms"].push_back(algorithm_to_json(a));
  j["schedule"] = schedule_to_json(spec.schedule);
  j["instances"] = spec.instances;
  j["budget"] = spec.budget;
  j["base_seed"] = spec.base_seed;
  return j;
}

json parse_document(const std::string& text, const char* expected_type) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw io_error(std::string("spec parse failure: ") + e.what());
  }
  // A manifest wraps the spec; unwrap transparently.
  if (j.contains("spec")) j = j.at("spec");
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion) {
    throw io_error("spec: unsupported schema_version");
  }
  if (j.value("type", expected_type) != std::string(expected_type)) {
    throw io_error(std::string("spec: expected type '") + expected_type + "'");
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out = open_output_file(path);
  out << text;
  if (!out) throw io_error("write failure: " + path);
}

}  // namespace

std::string experiment_spec_to_json(const ExperimentSpec& spec) {
  return experiment_to_json_object(spec).dump(2) + "\n";
}

std::string tts_spec_to_json(const TtsSpec& spec) {
  return tts_to_json_object(spec).dump(2) + "\n";
}

ExperimentSpec experiment_spec_from_json(const std::string& text) {
  const json j = parse_document(text, "experiment");
  try {
    ExperimentSpec spec;
    spec.problem = problem_from_json(j.at("problem"));
    for (const auto& s : j.at("schedules")) spec.schedules.push_back(schedule_from_json(s));
    for (const auto& a : j.at("algorithms")) spec.algorithms.push_back(algorithm_from_json(a));
    spec.repetitions = j.at("repetitions").get<std::uint64_t>();
    spec.base_seed = j.at("base_seed").get<std::uint64_t>();
    const std::string mode = j.value("budget_mode", "evaluation");
    if (mode == "evaluation") {
      spec.budget_mode = BudgetMode::EvaluationMatched;
    } else if (mode == "step") {
      spec.budget_mode = BudgetMode::StepMatched;
    } else {
      throw config_error("unknown budget_mode '" + mode + "'");
    }
    spec.budget = j.at("budget").get<std::uint64_t>();
    spec.fresh_instance_per_repetition = j.value("fresh_instance_per_repetition", false);
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw io_error(std::string("experiment spec: ") + e.what());
  }
}

TtsSpec tts_spec_from_json(const std::string& text) {
  const json j = parse_document(text, "tts");
  try {
    TtsSpec spec;
    spec.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    spec.algorithms.clear();
    for (const auto& a : j.at("algorithms")) spec.algorithms.push_back(algorithm_from_json(a));
    if (j.contains("schedule")) spec.schedule = schedule_from_json(j.at("schedule"));
    spec.instances = j.value("instances", spec.instances);
    spec.budget = j.value("budget", spec.budget);
    spec.base_seed = j.at("base_seed").get<std::uint64_t>();
    spec.validate();
    return spec;
  } catch (const json::exception& e) {
    throw io_error(std::string("tts spec: ") + e.what());
  }
}

ExperimentSpec load_experiment_spec(const std::string& path) {
  return experiment_spec_from_json(read_text_file(path));
}

TtsSpec load_tts_spec(const std::string& path) {
  return tts_spec_from_json(read_text_file(path));
}

void save_experiment_spec(const ExperimentSpec& spec, const std::string& path) {
  write_text_file(path, experiment_spec_to_json(spec));
}

void save_tts_spec(const TtsSpec& spec, const std::string& path) {
  write_text_file(path, tts_spec_to_json(spec));
}

void summarize_to_files(const RunSummary& summary, const std::string& prefix,
                        bool include_timing) {
  {
    std::ofstream out = open_output_file(prefix + "_samples.csv");
    out << "schedule,algorithm,repetition,best,steps,steps_to_best,evaluations\n";
    for (const RunSample& s : summary.samples) {
      out << s.schedule << ',' << s.algorithm << ',' << s.repetition << ','
          << format_double(s.best) << ',' << s.steps << ',' << s.steps_to_best << ','
          << s.evaluations << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_samples.csv");
  }
  {
    std::ofstream out = open_output_file(prefix + "_summary.csv");
    out << "schedule,algorithm,samples,mean_best,q25,median,q75,mean_evaluations\n";
    for (const CellSummary& c : summary.cells) {
      out << c.schedule << ',' << c.algorithm << ',' << c.samples << ','
          << format_double(c.mean) << ',' << format_double(c.q25) << ','
          << format_double(c.q50) << ',' << format_double(c.q75) << ','
          << format_double(c.mean_evaluations) << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_summary.csv");
  }
  if (include_timing) {
    std::ofstream out = open_output_file(prefix + "_timing.csv");
    out << "schedule,algorithm,mean_wall_time\n";
    for (const CellSummary& c : summary.cells) {
      out << c.schedule << ',' << c.algorithm << ',' << format_double(c.mean_wall_time)
          << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_timing.csv");
  }
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "pnsopt";
  manifest["tool_version"] = version_string;
  manifest["type"] = "experiment";
  manifest["spec"] = experiment_to_json_object(summary.spec);
  write_text_file(prefix + "_manifest.json", manifest.dump(2) + "\n");
}

void tts_to_files(const TtsResult& result, const std::string& prefix, bool include_timing) {
  {
    std::ofstream out = open_output_file(prefix + "_samples.csv");
    out << "n,instance,algorithm,solved,steps,evaluations\n";
    for (const TtsRow& r : result.rows) {
      out << r.n << ',' << r.instance << ',' << r.algorithm << ','
          << (r.solved ? 1 : 0) << ',' << r.steps << ',' << r.evaluations << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_samples.csv");
  }
  {
    std::ofstream out = open_output_file(prefix + "_summary.csv");
    out << "n,algorithm,attempts,solved,median_evaluations,median_steps\n";
    for (const TtsCell& c : result.cells) {
      out << c.n << ',' << c.algorithm << ',' << c.attempts << ',' << c.solved << ','
          << format_double(c.median_evaluations) << ',' << format_double(c.median_steps)
          << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_summary.csv");
  }
  if (include_timing) {
    std::ofstream out = open_output_file(prefix + "_timing.csv");
    out << "n,algorithm,median_wall_time\n";
    for (const TtsCell& c : result.cells) {
      out << c.n << ',' << c.algorithm << ',' << format_double(c.median_wall_time) << '\n';
    }
    if (!out) throw io_error("write failure: " + prefix + "_timing.csv");
  }
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "pnsopt";
  manifest["tool_version"] = version_string;
  manifest["type"] = "tts";
  manifest["spec"] = tts_to_json_object(result.spec);
  write_text_file(prefix + "_manifest.json", manifest.dump(2) + "\n");
}

}  // namespace pnsopt
