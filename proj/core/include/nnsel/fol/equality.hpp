#pragma once

#include <vector>

#include "nnsel/fol/problem.hpp"

namespace nnsel::fol {

/// Reflexivity, symmetry, transitivity and one congruence axiom per argument
/// position of every function and predicate symbol. Empty when the signature
/// has no `=`.
std::vector<std::vector<Literal>> equality_axioms(const Signature& sig);

bool uses_equality(const Problem& p);

}  // namespace nnsel::fol
