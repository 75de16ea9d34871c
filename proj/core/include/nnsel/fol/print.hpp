#pragma once

#include <string>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/problem.hpp"

namespace nnsel::fol {

/// Lexical token stream of a clause: symbol names, `~`, `|`, parentheses,
/// commas, and infix `=` / `!=`. Variables appear as V<n>. The empty clause
/// is the single token `$false`.
std::vector<std::string> clause_tokens(const Signature& sig, const std::vector<Literal>& literals);

std::string to_string(const Signature& sig, const Term& t);
std::string to_string(const Signature& sig, const Literal& l);
std::string to_string(const Signature& sig, const std::vector<Literal>& literals);
inline std::string to_string(const Signature& sig, const Clause& c) {
  return to_string(sig, c.literals);
}

/// TPTP cnf rendering of a whole problem, one annotated clause per line.
std::string print_problem(const Problem& p);

}  // namespace nnsel::fol
