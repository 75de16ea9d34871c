#include "nnsel/neural/encode.hpp"

#include "nnsel/fol/parse_tree.hpp"
#include "nnsel/fol/print.hpp"
#include "nnsel/fol/tokenize.hpp"

namespace nnsel::nn {

ModelInput encode_clause(const fol::Signature& sig, const std::vector<fol::Literal>& literals,
                         const fol::Vocabulary& vocab, const ModelConfig& config) {
  ModelInput in;
  if (is_sequence_model(config.arch)) {
    auto tokens = fol::clause_tokens(sig, literals);
    in.tokens = fol::tokenize_tokens(tokens, vocab, config.max_len).tokens;
  } else {
    in.tree = fol::clause_parse_tree(sig, literals);
    fol::index_tree(in.tree, vocab);
  }
  return in;
}

ModelInput encode_conjecture(const fol::Signature& sig, std::span<const fol::Clause> clauses,
                             const fol::Vocabulary& vocab, const ModelConfig& config) {
  ModelInput in;
  if (is_sequence_model(config.arch)) {
    in.tokens = fol::tokenize_conjecture(sig, clauses, vocab, config.max_len).tokens;
  } else {
    in.tree = fol::conjecture_parse_tree(sig, clauses);
    fol::index_tree(in.tree, vocab);
  }
  return in;
}

}  // namespace nnsel::nn
