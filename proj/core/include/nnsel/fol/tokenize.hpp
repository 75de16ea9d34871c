#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnsel/fol/clause.hpp"
#include "nnsel/fol/vocabulary.hpp"

namespace nnsel::fol {

constexpr std::size_t kDefaultMaxLen = 512;

struct TokenSequence {
  std::vector<std::uint32_t> tokens;
  std::int64_t source_clause_id = -1;
};

/// Vocabulary indices of the clause's printed token stream, truncated at the
/// tail to `max_len`.
TokenSequence tokenize(const Signature& sig, const Clause& c, const Vocabulary& vocab,
                       std::size_t max_len = kDefaultMaxLen);

TokenSequence tokenize_tokens(std::span<const std::string> tokens, const Vocabulary& vocab,
                              std::size_t max_len = kDefaultMaxLen);

/// Negated-conjecture clauses joined by the separator token.
TokenSequence tokenize_conjecture(const Signature& sig, std::span<const Clause> clauses,
                                  const Vocabulary& vocab, std::size_t max_len = kDefaultMaxLen);

}  // namespace nnsel::fol
