#include "nnsel/saturation/proof.hpp"

#include <algorithm>
#include <sstream>

#include "nnsel/error.hpp"
#include "nnsel/fol/equality.hpp"
#include "nnsel/fol/print.hpp"
#include "nnsel/fol/tptp.hpp"
#include "nnsel/saturation/inference.hpp"
#include "nnsel/saturation/subsumption.hpp"

namespace nnsel::sat {

UsedSplit extract_used_set(const Proof& proof, const std::vector<fol::ClauseId>& processed) {
  UsedSplit split;
  for (fol::ClauseId id : processed) {
    (proof.used_ids.contains(id) ? split.positives : split.negatives).push_back(id);
  }
  return split;
}

namespace {

fol::Clause as_clause(const DerivationStep& s) {
  fol::Clause c;
  c.id = s.id;
  c.literals = s.literals;
  c.parents = s.parents;
  c.rule = s.rule;
  c.role = s.role;
  return c;
}

VerifyResult failure(fol::ClauseId id, std::string reason) {
  return VerifyResult{false, id, std::move(reason)};
}

bool matches_any(const std::vector<fol::Literal>& lits, const std::vector<fol::Clause>& candidates) {
  return std::any_of(candidates.begin(), candidates.end(),
                     [&](const fol::Clause& c) { return is_variant(c.literals, lits); });
}

}  // namespace

VerifyResult verify_proof(const Proof& proof, const fol::Problem& problem) {
  auto root = proof.derivation.find(proof.empty_clause_id);
  if (root == proof.derivation.end()) {
    return failure(proof.empty_clause_id, "empty clause missing from derivation");
  }
  if (!root->second.literals.empty()) return failure(proof.empty_clause_id, "root clause is not empty");

  std::vector<const fol::Clause*> inputs = problem.input_clauses();
  const auto eq_axioms = fol::equality_axioms(problem.signature);

  for (const auto& [id, step] : proof.derivation) {
    if (step.id != id) return failure(id, "derivation key does not match step id");
    for (fol::ClauseId p : step.parents) {
      if (!proof.derivation.contains(p)) return failure(id, "parent " + std::to_string(index(p)) + " missing");
      if (index(p) >= index(id)) return failure(id, "parent id not smaller than conclusion id");
    }
    if (step.rule == "input") {
      if (!step.parents.empty()) return failure(id, "input clause with parents");
      const bool found = std::any_of(inputs.begin(), inputs.end(), [&](const fol::Clause* c) {
        return is_variant(c->literals, step.literals);
      });
      if (!found) return failure(id, "leaf is not an input clause of the problem");
    } else if (step.rule == "eq") {
      if (!step.parents.empty()) return failure(id, "equality axiom with parents");
      const bool found = std::any_of(eq_axioms.begin(), eq_axioms.end(), [&](const auto& lits) {
        return is_variant(lits, step.literals);
      });
      if (!found) return failure(id, "leaf is not an equality axiom of the signature");
    } else if (step.rule == "res") {
      if (step.parents.size() != 2) return failure(id, "resolution needs two parents");
      const auto& a = proof.derivation.at(step.parents[0]);
      const auto& b = proof.derivation.at(step.parents[1]);
      if (!matches_any(step.literals, resolve(as_clause(a), as_clause(b)))) {
        return failure(id, "conclusion is not a resolvent of its parents");
      }
    } else if (step.rule == "factor") {
      if (step.parents.size() != 1) return failure(id, "factoring needs one parent");
      const auto& a = proof.derivation.at(step.parents[0]);
      if (!matches_any(step.literals, factor(as_clause(a)))) {
        return failure(id, "conclusion is not a factor of its parent");
      }
    } else {
      return failure(id, "unknown rule '" + step.rule + "'");
    }
  }

  // Everything recorded must be an ancestor of the empty clause and vice versa.
  std::set<fol::ClauseId> reach;
  std::vector<fol::ClauseId> stack{proof.empty_clause_id};
  while (!stack.empty()) {
    fol::ClauseId id = stack.back();
    stack.pop_back();
    if (!reach.insert(id).second) continue;
    for (fol::ClauseId p : proof.derivation.at(id).parents) stack.push_back(p);
  }
  if (!proof.used_ids.empty() && reach != proof.used_ids) {
    return failure(proof.empty_clause_id, "used set differs from the ancestors of the empty clause");
  }
  return {};
}

std::string dump_derivation(const Proof& proof, const fol::Signature& sig) {
  std::ostringstream os;
  for (const auto& [id, step] : proof.derivation) {
    os << index(id) << ". " << fol::to_string(sig, step.literals) << " <- [";
    for (std::size_t i = 0; i < step.parents.size(); ++i) {
      if (i > 0) os << ',';
      os << index(step.parents[i]);
    }
    os << "] rule=" << step.rule << '\n';
  }
  return os.str();
}

Proof parse_derivation(std::string_view text, fol::Signature& sig) {
  Proof proof;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool found_empty = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || line[0] == '#') continue;
    const auto dot = line.find(". ");
    const auto arrow = line.rfind(" <- [");
    const auto close = line.rfind("] rule=");
    if (dot == std::string::npos || arrow == std::string::npos || close == std::string::npos ||
        arrow < dot || close < arrow) {
      throw ParseError("malformed derivation line", lineno, 1);
    }
    DerivationStep step;
    try {
      step.id = static_cast<fol::ClauseId>(std::stoul(line.substr(0, dot)));
    } catch (const std::exception&) {
      throw ParseError("bad clause id", lineno, 1);
    }
    step.literals = fol::parse_clause(line.substr(dot + 2, arrow - dot - 2), sig);
    std::string parents = line.substr(arrow + 5, close - arrow - 5);
    std::istringstream ps(parents);
    std::string item;
    while (std::getline(ps, item, ',')) {
      if (!item.empty()) step.parents.push_back(static_cast<fol::ClauseId>(std::stoul(item)));
    }
    step.rule = line.substr(close + 7);
    step.role = step.parents.empty() ? fol::ClauseRole::Axiom : fol::ClauseRole::Derived;
    if (step.literals.empty() && !found_empty) {
      proof.empty_clause_id = step.id;
      found_empty = true;
    }
    proof.derivation[step.id] = std::move(step);
  }
  if (!found_empty) throw Error("derivation contains no empty clause");
  // The empty clause is the root; recompute the used set from it.
  std::vector<fol::ClauseId> stack{proof.empty_clause_id};
  while (!stack.empty()) {
    fol::ClauseId id = stack.back();
    stack.pop_back();
    if (!proof.used_ids.insert(id).second) continue;
    auto it = proof.derivation.find(id);
    if (it == proof.derivation.end()) continue;
    for (fol::ClauseId p : it->second.parents) stack.push_back(p);
  }
  return proof;
}

}  // namespace nnsel::sat
