#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nnsel/fol/vocabulary.hpp"
#include "nnsel/neural/training.hpp"

namespace nnsel::test {

/// Hand-rolled generators for property tests; all seeded.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }
  bool coin() { return (rng() & 1) != 0; }
};

/// Random first-order clause text over p/1, q/2, r/0, f/1, g/2, a, b, c and
/// variables X, Y, Z.
std::string random_literal(Gen& g, int depth = 2);
std::string random_term(Gen& g, int depth);
std::string random_clause_text(Gen& g, int max_literals = 3);

/// Function-free problem text over p/1, q/2, r/0, constants a, b and
/// variables X, Y, with between 2 and `max_clauses` clauses, the last of
/// which is a negated conjecture.
std::string random_epr_problem(Gen& g, std::size_t max_clauses = 12);

/// Propositional CNF over atoms 1..n: literal k > 0 is p_k, k < 0 is ~p_k.
using PropCnf = std::vector<std::vector<int>>;
PropCnf random_prop_cnf(Gen& g, int atoms, int clauses, int max_width);
std::string prop_cnf_to_tptp(const PropCnf& cnf, std::size_t goal_clauses = 1);

/// Vocabulary over every token the clause generator can emit.
fol::Vocabulary generator_vocabulary();

std::vector<std::uint32_t> random_tokens(Gen& g, std::size_t vocab_size, std::size_t len);

/// Random examples encoded for `config`, half labelled 1.
std::vector<nn::Example> random_examples(Gen& g, const nn::ModelConfig& config, const fol::Vocabulary& vocab,
                                         std::size_t count);

}  // namespace nnsel::test
