#pragma once

#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/formula.hpp"
#include "nnsel/fol/symbol.hpp"

namespace nnsel::fol {

/// Clausal normal form of a closed formula (free variables are implicitly
/// universally quantified). When `negate` is set the formula is negated first.
/// Skolem symbols are added to `sig` as sk1, sk2, ... in traversal order.
/// Returned clauses carry literals only; ids and roles are assigned by the caller.
std::vector<std::vector<Literal>> clausify(const Formula& formula, bool negate, Signature& sig);

}  // namespace nnsel::fol
