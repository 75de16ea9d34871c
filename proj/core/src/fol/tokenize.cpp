#include "nnsel/fol/tokenize.hpp"

#include "nnsel/fol/print.hpp"

namespace nnsel::fol {

TokenSequence tokenize_tokens(std::span<const std::string> tokens, const Vocabulary& vocab,
                              std::size_t max_len) {
  TokenSequence seq;
  const std::size_t n = std::min(tokens.size(), max_len);
  seq.tokens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) seq.tokens.push_back(vocab.index(tokens[i]));
  return seq;
}

TokenSequence tokenize(const Signature& sig, const Clause& c, const Vocabulary& vocab,
                       std::size_t max_len) {
  const auto toks = clause_tokens(sig, c.literals);
  TokenSequence seq = tokenize_tokens(toks, vocab, max_len);
  seq.source_clause_id = index(c.id);
  return seq;
}

TokenSequence tokenize_conjecture(const Signature& sig, std::span<const Clause> clauses,
                                  const Vocabulary& vocab, std::size_t max_len) {
  std::vector<std::string> toks;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i > 0) toks.emplace_back(Vocabulary::kSepToken);
    auto part = clause_tokens(sig, clauses[i].literals);
    toks.insert(toks.end(), part.begin(), part.end());
  }
  return tokenize_tokens(toks, vocab, max_len);
}

}  // namespace nnsel::fol
