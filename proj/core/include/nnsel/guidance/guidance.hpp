#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "nnsel/fol/problem.hpp"
#include "nnsel/fol/vocabulary.hpp"
#include "nnsel/heuristics/schedule.hpp"
#include "nnsel/neural/model.hpp"
#include "nnsel/saturation/prover.hpp"

namespace nnsel::guide {

enum class Mode : std::uint8_t { Auto, PureNN, Hybrid, Switched };

std::string_view mode_name(Mode m);
/// Accepts auto, pure, hybrid, switched.
Mode parse_mode(std::string_view name);

enum class BudgetUnit : std::uint8_t { ProcessedClauses, WallMs };

struct Budget {
  BudgetUnit unit = BudgetUnit::ProcessedClauses;
  std::uint64_t amount = 0;
};

/// A trained model together with the vocabulary it was trained on.
struct Scorer {
  std::shared_ptr<const nn::Model> model;
  std::shared_ptr<const fol::Vocabulary> vocab;

  /// Throws when the model's vocabulary hash does not match `vocab`.
  void validate() const;
};

struct GuidanceConfig {
  Mode mode = Mode::Auto;
  Scorer scorer;
  std::uint32_t nn_picks = 1;
  std::uint32_t auto_cycle_picks = 1;
  heur::ScheduleSpec auto_schedule = heur::auto208_spec();
  Budget total_budget{BudgetUnit::ProcessedClauses, 1000};
  /// Switched only; defaults to two thirds of the total budget.
  std::optional<Budget> phase1_budget;
  std::size_t batch_size = 64;
  bool cache = true;
  /// Generated-clause cap and optional memory cap; budgets override the
  /// processed and wall-clock fields.
  sat::SearchLimits limits;
  bool equality_axioms = true;

  Budget effective_phase1() const;
  /// Throws on inconsistent settings (missing model, phase1 >= total, ...).
  void validate() const;
};

/// Clause id -> probability. Scores never change once cached because they
/// depend only on the clause and the fixed conjecture.
using ScoreCache = std::unordered_map<std::uint32_t, double>;

/// Scores the uncached clauses in order, `batch_size` at a time. Returns the
/// number of batch evaluation calls.
std::size_t score_batch(std::span<const fol::Clause* const> clauses, const fol::Signature& sig, const Scorer& scorer,
                        const nn::ConjectureContext& conjecture, ScoreCache& cache, std::size_t batch_size);

/// Weight function -p(useful | clause, conjecture), so the lowest-first
/// queues pick the most probable clause.
class NeuralWeight : public heur::WeightFunction {
 public:
  NeuralWeight(const fol::Problem& problem, Scorer scorer, std::size_t batch_size = 64, bool cache = true);

  void prepare(std::span<const fol::Clause* const> batch) override;
  std::string name() const override { return "nn"; }
  bool is_neural() const override { return true; }

  /// Clause embeddings computed by the network.
  std::uint64_t network_evaluations() const noexcept { return network_evaluations_; }
  std::uint64_t batch_calls() const noexcept { return batch_calls_; }
  std::uint64_t conjecture_embeddings() const noexcept { return conjecture_embeddings_; }
  const ScoreCache& cache() const noexcept { return cache_; }

 protected:
  double weight(const fol::Clause& c) override;

 private:
  double score_one(const fol::Clause& c);

  const fol::Problem& problem_;
  Scorer scorer_;
  std::size_t batch_size_;
  bool use_cache_;
  nn::ConjectureContext conjecture_;
  ScoreCache cache_;
  std::uint64_t network_evaluations_ = 0;
  std::uint64_t batch_calls_ = 0;
  std::uint64_t conjecture_embeddings_ = 0;
};

/// Auto: the classical replica. PureNN: one NN entry. Hybrid: an NN entry of
/// weight nn_picks followed by the auto entries scaled by auto_cycle_picks.
heur::ScheduleSpec build_schedule(const GuidanceConfig& config);

struct GuidedResult {
  sat::ProveResult result;
  Mode mode = Mode::Auto;
  std::uint64_t network_evaluations = 0;
  std::uint64_t batch_calls = 0;
  std::uint64_t conjecture_embeddings = 0;
  /// Switched only.
  bool switched = false;
  std::uint64_t phase1_processed = 0;
  std::uint64_t evaluations_after_switch = 0;
  std::vector<fol::ClauseId> processed_at_switch;
  std::vector<fol::ClauseId> selections;
  std::vector<fol::ClauseId> final_processed;
};

GuidedResult guided_prove(const fol::Problem& problem, const GuidanceConfig& config);

/// Two-phase search: hybrid until the phase-1 budget fires, then the same
/// saturation state continues under the auto schedule.
GuidedResult switched_prove(const fol::Problem& problem, const GuidanceConfig& config);

}  // namespace nnsel::guide
