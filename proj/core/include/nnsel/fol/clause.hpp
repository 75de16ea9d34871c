#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnsel/fol/term.hpp"

namespace nnsel::fol {

enum class ClauseId : std::uint32_t {};

constexpr std::uint32_t index(ClauseId id) noexcept { return static_cast<std::uint32_t>(id); }

enum class ClauseRole : std::uint8_t { Axiom, NegatedConjecture, Derived };

const char* role_name(ClauseRole role) noexcept;

/// A disjunction of literals. The empty clause denotes a contradiction.
struct Clause {
  ClauseId id{};
  std::vector<Literal> literals;
  std::uint64_t age = 0;
  std::vector<ClauseId> parents;
  ClauseRole role = ClauseRole::Axiom;
  std::string rule = "input";
  /// Set for negated-conjecture clauses and everything derived from one.
  bool from_goal = false;
  /// Index of the input unit (annotated formula) an input clause came from.
  std::uint32_t origin = 0;

  bool empty() const noexcept { return literals.empty(); }
  std::size_t size() const noexcept { return literals.size(); }
  std::uint32_t max_var() const;
  std::size_t term_nodes() const;
};

/// Renames variables to 1, 2, ... in order of first occurrence.
std::vector<Literal> normalize_variables(const std::vector<Literal>& literals);
Clause normalize_variables(Clause c);

/// Drops repeated identical literals, keeping first occurrences.
std::vector<Literal> dedupe_literals(std::vector<Literal> literals);

bool is_tautology(const std::vector<Literal>& literals);

}  // namespace nnsel::fol
