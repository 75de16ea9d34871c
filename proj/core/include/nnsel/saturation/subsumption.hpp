#pragma once

#include <cstdint>

#include "nnsel/fol/clause.hpp"

namespace nnsel::sat {

/// True iff some substitution maps the literals of `general` injectively onto
/// literals of `specific`.
bool subsumes(const fol::Clause& general, const fol::Clause& specific);
bool subsumes(const std::vector<fol::Literal>& general, const std::vector<fol::Literal>& specific);

/// Same literals up to a variable bijection.
bool is_variant(const std::vector<fol::Literal>& a, const std::vector<fol::Literal>& b);

/// 64-bit over-approximation of the (polarity, predicate) pairs in a clause;
/// general.mask must be a subset of specific.mask for subsumption.
std::uint64_t literal_mask(const std::vector<fol::Literal>& literals);

}  // namespace nnsel::sat
