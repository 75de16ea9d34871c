#pragma once

#include <vector>

#include "nnsel/fol/clause.hpp"

namespace nnsel::sat {

/// Binary resolvents of c1 and c2 after standardizing c2 apart. Each result is
/// variable-normalized with duplicate literals merged, has parents {c1, c2}
/// and rule "res". Identical resolvents are reported once.
std::vector<fol::Clause> resolve(const fol::Clause& c1, const fol::Clause& c2);

/// Factors of c: for each unifiable same-polarity pair, the clause under the
/// mgu with the duplicate merged. Rule "factor".
std::vector<fol::Clause> factor(const fol::Clause& c);

}  // namespace nnsel::sat
