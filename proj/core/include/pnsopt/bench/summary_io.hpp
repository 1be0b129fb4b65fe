#pragma once

#include <string>

#include "pnsopt/bench/experiment.hpp"
#include "pnsopt/bench/tts.hpp"

namespace pnsopt {

/** Spec as a JSON document (schema_version 1, stable key order). */
std::string experiment_spec_to_json(const ExperimentSpec& spec);
std::string tts_spec_to_json(const TtsSpec& spec);

/**
 * Parses a spec from JSON text. A result manifest is accepted too: when the
 * document carries a "spec" object, that object is read instead, so any run
 * can be repeated straight from its manifest.
 */
ExperimentSpec experiment_spec_from_json(const std::string& text);
TtsSpec tts_spec_from_json(const std::string& text);

ExperimentSpec load_experiment_spec(const std::string& path);
TtsSpec load_tts_spec(const std::string& path);
void save_experiment_spec(const ExperimentSpec& spec, const std::string& path);
void save_tts_spec(const TtsSpec& spec, const std::string& path);

/**
 * Writes <prefix>_samples.csv (one row per run), <prefix>_summary.csv (one
 * row per grid cell), and <prefix>_manifest.json (schema, tool version, and
 * the full spec — enough to rerun the study). The CSVs contain only
 * seed-determined columns, so reruns of the same spec are byte-identical no
 * matter how many threads produced them; wall-clock means go to
 * <prefix>_timing.csv when include_timing is set.
 */
void summarize_to_files(const RunSummary& summary, const std::string& prefix,
                        bool include_timing = false);

/** Same layout for a time-to-solution study. */
void tts_to_files(const TtsResult& result, const std::string& prefix,
                  bool include_timing = false);

}  // namespace pnsopt
