#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "nnsel/fol/problem.hpp"
#include "nnsel/fol/vocabulary.hpp"
#include "nnsel/neural/training.hpp"
#include "nnsel/saturation/prover.hpp"

namespace nnsel::data {

struct TraceClause {
  std::uint32_t id = 0;
  std::string text;
  fol::ClauseRole role = fol::ClauseRole::Derived;
  bool processed = false;
  bool used = false;
};

struct ProofTrace {
  std::string problem;
  /// Printed negated conjecture; examples are split by this key.
  std::string conjecture_key;
  std::vector<std::string> conjecture;  // one printed clause each
  sat::ProveStatus status = sat::ProveStatus::ResourceOut;
  std::string config_hash;
  std::uint64_t processed_count = 0;
  /// Processed clauses in selection order, then sampled never-processed
  /// clauses by id.
  std::vector<TraceClause> clauses;

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

struct TraceOptions {
  sat::SearchConfig baseline;
  /// Cap on recorded never-processed clauses (uniform sample when exceeded).
  std::size_t unprocessed_sample = 1000;
  std::uint64_t seed = 1;
};

/// Hex FNV-1a over the schedule, limits and equality flag.
std::string config_hash(const sat::SearchConfig& config);

ProofTrace generate_trace(const fol::Problem& problem, const TraceOptions& options);
std::vector<ProofTrace> generate_traces(std::span<const fol::Problem> corpus, const TraceOptions& options);

/// Trace files are JSON lines: per trace one header record
/// {"type":"trace","problem","status","config_hash","processed_count","conjecture_key","conjecture"}
/// followed by one {"type":"clause","id","text","role","processed","used"} per clause.
void write_traces(std::ostream& out, std::span<const ProofTrace> traces);
std::vector<ProofTrace> read_traces(std::istream& in);

enum class NegativeKind : std::uint8_t { None, ProcessedUnused, SampledUnprocessed };
std::string_view negative_kind_name(NegativeKind k);

struct TrainingExample {
  std::string problem;
  std::string conjecture_key;
  std::uint32_t clause_id = 0;
  int label = 0;  // 1 = used in the proof
  NegativeKind negative_kind = NegativeKind::None;
  std::string clause_text;
  std::vector<std::string> conjecture;

  friend bool operator==(const TrainingExample&, const TrainingExample&) = default;
};

/// Positives are used processed clauses, negatives the unused ones. Star mode
/// adds floor(star_ratio * negatives) never-processed clauses sampled
/// uniformly with `seed`, or floor(star_ratio * positives) when no processed
/// clause was unused. Non-Unsatisfiable traces give no examples.
std::vector<TrainingExample> label_examples(const ProofTrace& trace, bool star_mode = false, double star_ratio = 1.0,
                                            std::uint64_t seed = 1);

struct DatasetSplit {
  std::set<std::string> train;
  std::set<std::string> eval;
};

/// Shuffles the distinct conjecture keys with `seed` and sends the first
/// round(fraction * n) to the training side.
DatasetSplit split_by_conjecture(std::span<const TrainingExample> examples, double fraction = 0.9,
                                 std::uint64_t seed = 1);
std::vector<TrainingExample> select(std::span<const TrainingExample> examples, const std::set<std::string>& keys);

/// Token frequencies over clause and conjecture text of the training side.
fol::Vocabulary build_vocabulary(std::span<const TrainingExample> train);

/// Downsamples the majority class to the minority size; order is preserved.
std::vector<TrainingExample> balance_eval_set(std::span<const TrainingExample> examples, std::uint64_t seed = 1);

/// Printed-token stream of a clause text and of a conjecture.
std::vector<std::string> clause_text_tokens(const std::string& text);

/// Example files: one JSON record per line with label, clause_text,
/// clause_tokens, conjecture (texts), conjecture_tokens, problem,
/// conjecture_key, clause_id and negative_kind. Token arrays use `vocab`.
void write_examples(std::ostream& out, std::span<const TrainingExample> examples, const fol::Vocabulary& vocab,
                    std::size_t max_len = 512);
std::vector<TrainingExample> read_examples(std::istream& in);

/// Re-parses the printed text and encodes it for `config`.
std::vector<nn::Example> encode_examples(std::span<const TrainingExample> examples, const fol::Vocabulary& vocab,
                                         const nn::ModelConfig& config);

struct DatasetOptions {
  bool star_mode = false;
  double star_ratio = 1.0;
  double train_fraction = 0.9;
  /// Downsample the majority class of the training side as well.
  bool balance_train = true;
  std::uint64_t seed = 1;
};

struct Dataset {
  DatasetSplit split;
  std::vector<TrainingExample> train;
  /// Held-out conjectures, balanced.
  std::vector<TrainingExample> eval;
  fol::Vocabulary vocab;
};

/// Labels every trace, splits by conjecture, builds the vocabulary from the
/// full training side and balances the held-out side.
Dataset build_dataset(std::span<const ProofTrace> traces, const DatasetOptions& options = {});

}  // namespace nnsel::data
