#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nnsel/fol/term.hpp"

namespace nnsel::fol {

/// First-order formula tree as read from `fof(...)`. Variables are numbered
/// per formula by name; quantifiers list the numbers they bind.
struct Formula {
  enum class Kind { Atom, True, False, Not, And, Or, Implies, Iff, Xor, Nor, Nand, Forall, Exists };

  Kind kind = Kind::True;
  Literal atom;                        // Atom (always positive)
  std::vector<Formula> children;       // connectives and quantifier body
  std::vector<std::uint32_t> bound;    // Forall / Exists

  static Formula make_atom(Term a) {
    Formula f;
    f.kind = Kind::Atom;
    f.atom = Literal{true, std::move(a)};
    return f;
  }
  static Formula make(Kind k, std::vector<Formula> children) {
    Formula f;
    f.kind = k;
    f.children = std::move(children);
    return f;
  }
  static Formula quantified(Kind k, std::vector<std::uint32_t> vars, Formula body) {
    Formula f;
    f.kind = k;
    f.bound = std::move(vars);
    f.children.push_back(std::move(body));
    return f;
  }
};

}  // namespace nnsel::fol
