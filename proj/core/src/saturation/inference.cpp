#include "nnsel/saturation/inference.hpp"

#include <algorithm>

#include "nnsel/saturation/unify.hpp"

namespace nnsel::sat {

namespace {

void push_unique(std::vector<fol::Clause>& out, std::vector<fol::Literal> lits) {
  lits = fol::normalize_variables(fol::dedupe_literals(std::move(lits)));
  for (const auto& c : out) {
    if (c.literals == lits) return;
  }
  fol::Clause c;
  c.literals = std::move(lits);
  c.role = fol::ClauseRole::Derived;
  out.push_back(std::move(c));
}

}  // namespace

std::vector<fol::Clause> resolve(const fol::Clause& c1, const fol::Clause& c2) {
  std::vector<fol::Clause> out;
  const std::uint32_t offset = c1.max_var();
  std::vector<fol::Literal> right;
  right.reserve(c2.literals.size());
  for (const auto& l : c2.literals) right.push_back(fol::Literal{l.positive, shift_vars(l.atom, offset)});

  for (std::size_t i = 0; i < c1.literals.size(); ++i) {
    const fol::Literal& li = c1.literals[i];
    for (std::size_t j = 0; j < right.size(); ++j) {
      const fol::Literal& lj = right[j];
      if (li.positive == lj.positive || li.predicate() != lj.predicate() ||
          li.args().size() != lj.args().size()) {
        continue;
      }
      Substitution s;
      if (!unify(li.atom, lj.atom, s)) continue;
      std::vector<fol::Literal> lits;
      lits.reserve(c1.literals.size() + right.size() - 2);
      for (std::size_t k = 0; k < c1.literals.size(); ++k) {
        if (k != i) lits.push_back(fol::Literal{c1.literals[k].positive, s.apply(c1.literals[k].atom)});
      }
      for (std::size_t k = 0; k < right.size(); ++k) {
        if (k != j) lits.push_back(fol::Literal{right[k].positive, s.apply(right[k].atom)});
      }
      push_unique(out, std::move(lits));
    }
  }
  for (auto& c : out) {
    c.parents = {c1.id, c2.id};
    c.rule = "res";
    c.from_goal = c1.from_goal || c2.from_goal;
  }
  return out;
}

std::vector<fol::Clause> factor(const fol::Clause& c) {
  std::vector<fol::Clause> out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      const fol::Literal& a = c.literals[i];
      const fol::Literal& b = c.literals[j];
      if (a.positive != b.positive || a.predicate() != b.predicate() ||
          a.args().size() != b.args().size()) {
        continue;
      }
      Substitution s;
      if (!unify(a.atom, b.atom, s)) continue;
      std::vector<fol::Literal> lits;
      for (std::size_t k = 0; k < c.literals.size(); ++k) {
        if (k != j) lits.push_back(fol::Literal{c.literals[k].positive, s.apply(c.literals[k].atom)});
      }
      push_unique(out, std::move(lits));
    }
  }
  for (auto& f : out) {
    f.parents = {c.id};
    f.rule = "factor";
    f.from_goal = c.from_goal;
  }
  return out;
}

}  // namespace nnsel::sat
