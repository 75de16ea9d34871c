#include "nnsel/fol/clause.hpp"

#include <algorithm>
#include <unordered_map>

namespace nnsel::fol {

const char* role_name(ClauseRole role) noexcept {
  switch (role) {
    case ClauseRole::Axiom: return "axiom";
    case ClauseRole::NegatedConjecture: return "negated_conjecture";
    case ClauseRole::Derived: return "derived";
  }
  return "?";
}

std::uint32_t Clause::max_var() const {
  std::uint32_t m = 0;
  for (const auto& l : literals) m = std::max(m, l.atom.max_var());
  return m;
}

std::size_t Clause::term_nodes() const {
  std::size_t n = 0;
  for (const auto& l : literals) n += l.atom.size();
  return n;
}

std::vector<Literal> normalize_variables(const std::vector<Literal>& literals) {
  std::unordered_map<std::uint32_t, std::uint32_t> renaming;
  auto map = [&renaming](std::uint32_t v) {
    auto [it, inserted] = renaming.try_emplace(v, static_cast<std::uint32_t>(renaming.size() + 1));
    return it->second;
  };
  std::vector<Literal> out;
  out.reserve(literals.size());
  for (const auto& l : literals) out.push_back(Literal{l.positive, rename_vars(l.atom, map)});
  return out;
}

Clause normalize_variables(Clause c) {
  c.literals = normalize_variables(c.literals);
  return c;
}

std::vector<Literal> dedupe_literals(std::vector<Literal> literals) {
  std::vector<Literal> out;
  out.reserve(literals.size());
  for (auto& l : literals) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  }
  return out;
}

bool is_tautology(const std::vector<Literal>& literals) {
  for (std::size_t i = 0; i < literals.size(); ++i) {
    for (std::size_t j = i + 1; j < literals.size(); ++j) {
      if (literals[i].positive != literals[j].positive && literals[i].atom == literals[j].atom) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace nnsel::fol
