#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nnsel/harness/corpus.hpp"
#include "nnsel/harness/experiment.hpp"

namespace nnsel::harness {

struct MethodSpec {
  std::string id;
  guide::Mode mode = guide::Mode::Auto;
  std::string auto_schedule = "auto208";
  std::uint32_t nn_picks = 1;
  std::uint32_t auto_cycle_picks = 1;
  /// Switched only, in the run budget unit.
  std::optional<std::uint64_t> phase1;
  std::optional<std::vector<std::size_t>> cascade_levels;
  /// Per-method checkpoint and vocabulary; default to the experiment's.
  std::string checkpoint;
  std::string vocab;
};

/// One declarative experiment file (JSON). Absent keys take these defaults.
struct ExperimentConfig {
  /// Directory of `.p` files; empty means the generated corpus.
  std::string corpus_dir;
  CorpusOptions corpus;
  /// Keep only problems whose family is listed; empty keeps all.
  std::vector<std::string> families;
  std::string budget_unit = "processed";
  std::uint64_t budget = 20000;
  std::uint64_t max_generated = 1'000'000;
  /// 0 disables the wall-clock guard.
  std::uint64_t max_wall_ms = 60000;
  std::size_t workers = 1;
  std::size_t batch_size = 64;
  std::string checkpoint;
  std::string vocab;
  std::vector<MethodSpec> methods;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
/// Compact JSON with every field resolved; embedded in reports.
std::string to_json(const ExperimentConfig& config);

RunOptions run_options(const ExperimentConfig& config);
/// Loads checkpoints and vocabularies (shared per path) and builds methods.
/// Cascade methods rank premises with their scorer.
std::vector<Method> resolve_methods(const ExperimentConfig& config);
std::vector<CorpusProblem> load_corpus(const ExperimentConfig& config);

/// Reads a vocabulary file written by Vocabulary::serialize.
fol::Vocabulary load_vocabulary(const std::filesystem::path& path);
void save_vocabulary(const fol::Vocabulary& vocab, const std::filesystem::path& path);

}  // namespace nnsel::harness
