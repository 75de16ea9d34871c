#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/problem.hpp"

namespace nnsel::sat {

struct DerivationStep {
  fol::ClauseId id{};
  std::vector<fol::Literal> literals;
  std::vector<fol::ClauseId> parents;
  std::string rule;  // input, eq, res, factor
  fol::ClauseRole role = fol::ClauseRole::Derived;
};

/// Derivation DAG of the empty clause.
struct Proof {
  fol::ClauseId empty_clause_id{};
  std::map<fol::ClauseId, DerivationStep> derivation;
  std::set<fol::ClauseId> used_ids;
};

struct UsedSplit {
  std::vector<fol::ClauseId> positives;
  std::vector<fol::ClauseId> negatives;
};

/// Processed clauses in the proof's used set versus the rest.
UsedSplit extract_used_set(const Proof& proof, const std::vector<fol::ClauseId>& processed);

struct VerifyResult {
  bool ok = true;
  std::optional<fol::ClauseId> failing;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Replays every derivation edge: resolution and factoring steps must be
/// reproducible from their recorded parents up to variable renaming, and
/// leaves must be input clauses of `problem` (or its equality axioms).
VerifyResult verify_proof(const Proof& proof, const fol::Problem& problem);

/// One line per step: `id. <clause> <- [parents] rule=<name>`.
std::string dump_derivation(const Proof& proof, const fol::Signature& sig);

/// Reads dump_derivation output; symbols are interned into `sig`.
Proof parse_derivation(std::string_view text, fol::Signature& sig);

}  // namespace nnsel::sat
