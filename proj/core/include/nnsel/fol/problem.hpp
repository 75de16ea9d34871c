#pragma once

#include <string>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/symbol.hpp"

namespace nnsel::fol {

/// One annotated formula of the input file.
struct InputUnit {
  std::string name;
  std::string role;  // axiom, hypothesis, conjecture, negated_conjecture
};

struct Problem {
  std::string name;
  Signature signature;
  std::vector<Clause> axioms;
  std::vector<Clause> negated_conjecture;
  std::vector<InputUnit> units;

  std::size_t clause_count() const noexcept { return axioms.size() + negated_conjecture.size(); }
  /// Axioms followed by negated-conjecture clauses.
  std::vector<const Clause*> input_clauses() const;
};

}  // namespace nnsel::fol
