#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nnsel/fol/problem.hpp"
#include "nnsel/guidance/guidance.hpp"

namespace nnsel::premsel {

/// One input formula that is not part of the conjecture, with the clauses
/// it produced.
struct Premise {
  std::uint32_t unit = 0;
  std::string name;
  std::vector<const fol::Clause*> clauses;
};

/// Premises in input order.
std::vector<Premise> premises(const fol::Problem& problem);

/// Scores a premise against the problem's negated conjecture.
using PremiseScorer = std::function<double(const fol::Problem&, const Premise&)>;

/// Network scorer. Sequence models read the premise clauses joined by the
/// separator through the clause tower; tree models score each clause and
/// take the maximum, since clause trees cannot contain conjunctions.
PremiseScorer model_scorer(guide::Scorer scorer);

struct RankedPremise {
  std::uint32_t unit = 0;
  double score = 0.0;
};

/// Descending score; ties keep input order.
using RankedPremises = std::vector<RankedPremise>;

RankedPremises rank_premises(const fol::Problem& problem, const PremiseScorer& scorer);
/// FNV-1a over "unit:score" entries.
std::uint64_t ranking_hash(const RankedPremises& ranking);

/// The negated conjecture plus the clauses of the given premise units, with
/// clause ids renumbered in input order.
fol::Problem subproblem(const fol::Problem& problem, const std::vector<std::uint32_t>& units);

/// Levels clamped to the premise count, duplicates dropped, order kept.
std::vector<std::size_t> effective_levels(const std::vector<std::size_t>& levels, std::size_t premise_count);

struct CascadeConfig {
  std::vector<std::size_t> levels{32, 64, 128, 256};
  /// Search inside each level; its total_budget is split evenly across the
  /// effective levels.
  guide::GuidanceConfig guidance;
};

struct LevelRecord {
  std::size_t level = 0;
  sat::ProveStatus status = sat::ProveStatus::ResourceOut;
  std::uint64_t processed = 0;
  std::uint64_t generated = 0;
  std::uint64_t network_evaluations = 0;
};

struct CascadeResult {
  guide::GuidedResult result;
  std::optional<std::size_t> proved_level;
  std::uint64_t ranking_hash = 0;
  std::vector<LevelRecord> transcript;
  /// The sub-problem of the last attempted level; proofs refer to its clauses.
  fol::Problem last_subproblem;
};

/// Tries the top-k premise subsets in level order and stops at the first
/// proof.
CascadeResult cascade_prove(const fol::Problem& problem, const RankedPremises& ranking, const CascadeConfig& config);

}  // namespace nnsel::premsel
