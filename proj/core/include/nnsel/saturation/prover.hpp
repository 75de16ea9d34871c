#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nnsel/fol/problem.hpp"
#include "nnsel/heuristics/schedule.hpp"
#include "nnsel/saturation/proof.hpp"

namespace nnsel::sat {

enum class ProveStatus : std::uint8_t { Unsatisfiable, Satisfiable, ResourceOut };

enum class LimitKind : std::uint8_t { None, ProcessedClauses, GeneratedClauses, WallClock, Memory };

const char* status_name(ProveStatus s) noexcept;
const char* limit_name(LimitKind k) noexcept;

struct SearchLimits {
  std::optional<std::uint64_t> max_processed;
  std::uint64_t max_generated = 1'000'000;
  std::optional<std::uint64_t> max_wall_ms;
  std::optional<std::uint64_t> max_memory_bytes;
};

struct SearchConfig {
  heur::ScheduleSpec schedule = heur::auto208_spec();
  SearchLimits limits;
  /// Inject equality axioms when the problem uses `=`.
  bool equality_axioms = true;
  heur::NeuralFactory neural;
};

struct ProveResult {
  ProveStatus status = ProveStatus::ResourceOut;
  LimitKind limit = LimitKind::None;
  std::optional<Proof> proof;
  std::uint64_t processed_count = 0;
  std::uint64_t generated_count = 0;
  std::uint64_t wall_ms = 0;
};

/// `% SZS status <status> for <name>`
std::string szs_line(const ProveResult& r, const std::string& problem_name);

enum class StepOutcome : std::uint8_t { Continue, ProofFound, Saturated };

/// Given-clause saturation state: the clause store, the processed set and
/// counters. The unprocessed set lives in the attached SelectionSchedule.
class Saturation {
 public:
  explicit Saturation(const fol::Problem& problem, bool equality_axioms = true);

  /// Installs a schedule and feeds it every live unprocessed clause. When a
  /// schedule was already attached its live clauses are transferred, which is
  /// how two-phase search switches heuristics on the same state.
  void attach(heur::SelectionSchedule schedule);

  /// One selection: discard the given clause if tautological or subsumed by a
  /// processed clause, otherwise resolve it with every processed clause and
  /// itself, factor it, and move it to processed.
  StepOutcome step();

  /// Steps until proof, saturation, or a limit. Limits count from this
  /// object's creation, so a later call continues the same search.
  ProveResult run(const SearchLimits& limits);

  const fol::Clause& clause(fol::ClauseId id) const { return store_.at(fol::index(id)); }
  const std::vector<fol::Clause>& store() const noexcept { return store_; }
  const std::vector<fol::ClauseId>& processed() const noexcept { return processed_; }
  const heur::SelectionSchedule& schedule() const noexcept { return schedule_; }
  const fol::Problem& problem() const noexcept { return problem_; }

  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t generated() const noexcept { return generated_; }
  std::uint64_t discarded() const noexcept { return discarded_; }
  std::uint64_t memory_estimate() const noexcept { return memory_; }
  const std::optional<Proof>& proof() const noexcept { return proof_; }
  std::uint64_t elapsed_ms() const;

  /// Selection order so far.
  const std::vector<fol::ClauseId>& selections() const noexcept { return selections_; }

 private:
  fol::ClauseId add(fol::Clause c);
  Proof build_proof(fol::ClauseId empty) const;

  const fol::Problem& problem_;
  std::vector<fol::Clause> store_;
  std::vector<fol::ClauseId> processed_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> by_predicate_;  // processed, by predicate
  std::vector<std::uint64_t> masks_;
  heur::SelectionSchedule schedule_;
  bool attached_ = false;
  std::uint64_t steps_ = 0;
  std::uint64_t generated_ = 0;
  std::uint64_t discarded_ = 0;
  std::uint64_t memory_ = 0;
  std::optional<Proof> proof_;
  std::optional<fol::ClauseId> input_empty_;
  std::vector<fol::ClauseId> selections_;
  std::chrono::steady_clock::time_point start_;
};

ProveResult prove(const fol::Problem& problem, const SearchConfig& config);

}  // namespace nnsel::sat
