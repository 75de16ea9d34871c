#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nnsel/fol/problem.hpp"

namespace nnsel::harness {

struct CorpusProblem {
  std::string name;
  std::string family;  // chain, group, set, pigeonhole, distractor
  std::string text;    // TPTP

  friend bool operator==(const CorpusProblem&, const CorpusProblem&) = default;
};

struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t distractor_problems = 25;
  std::size_t distractors_per_problem = 200;
};

/// Desk-scale corpus: ordered-chain transitivity, group exercises over a
/// product predicate, set algebra, pigeonhole, and distractor-padded
/// variants with 10 relevant and `distractors_per_problem` irrelevant
/// premises. Deterministic in the seed; sorted by name.
std::vector<CorpusProblem> generate_corpus(const CorpusOptions& options = {});

/// Only the distractor-padded family, named `<prefix>_NNN`. A seed other
/// than the training corpus seed yields problems unseen in training.
std::vector<CorpusProblem> generate_distractor_problems(const CorpusOptions& options,
                                                        const std::string& prefix = "distractor");

fol::Problem parse(const CorpusProblem& p);

/// Writes `<name>.p` per problem, starting with a `% family: <family>` line.
void write_corpus(const std::filesystem::path& dir, const std::vector<CorpusProblem>& problems);
/// Reads every `*.p` file in `dir`, sorted by name. The family comes from a
/// leading `% family:` line, else from the name prefix before the first
/// underscore.
std::vector<CorpusProblem> read_corpus(const std::filesystem::path& dir);

}  // namespace nnsel::harness
