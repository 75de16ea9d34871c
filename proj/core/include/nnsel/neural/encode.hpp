#pragma once

#include <span>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/vocabulary.hpp"
#include "nnsel/neural/model.hpp"

namespace nnsel::nn {

/// Network input for a clause: tokens for sequence models, an indexed parse
/// tree otherwise.
ModelInput encode_clause(const fol::Signature& sig, const std::vector<fol::Literal>& literals,
                         const fol::Vocabulary& vocab, const ModelConfig& config);
ModelInput encode_conjecture(const fol::Signature& sig, std::span<const fol::Clause> clauses,
                             const fol::Vocabulary& vocab, const ModelConfig& config);

}  // namespace nnsel::nn
