#include "nnsel/premsel/premsel.hpp"

#include <algorithm>
#include <cstdio>

#include "nnsel/error.hpp"
#include "nnsel/fol/tokenize.hpp"
#include "nnsel/fol/print.hpp"
#include "nnsel/neural/encode.hpp"

namespace nnsel::premsel {

namespace {

bool is_goal_role(const std::string& role) { return role == "conjecture" || role == "negated_conjecture"; }

}  // namespace

std::vector<Premise> premises(const fol::Problem& problem) {
  std::vector<Premise> out;
  std::vector<std::size_t> slot(problem.units.size(), static_cast<std::size_t>(-1));
  for (std::uint32_t u = 0; u < problem.units.size(); ++u) {
    if (is_goal_role(problem.units[u].role)) continue;
    slot[u] = out.size();
    out.push_back(Premise{u, problem.units[u].name, {}});
  }
  for (const fol::Clause& c : problem.axioms)
    if (c.origin < slot.size() && slot[c.origin] != static_cast<std::size_t>(-1))
      out[slot[c.origin]].clauses.push_back(&c);
  return out;
}

PremiseScorer model_scorer(guide::Scorer scorer) {
  scorer.validate();
  return [scorer](const fol::Problem& problem, const Premise& premise) {
    const nn::Model& m = *scorer.model;
    const fol::Vocabulary& vocab = *scorer.vocab;
    nn::ModelInput conj = nn::encode_conjecture(problem.signature, problem.negated_conjecture, vocab, m.config());
    nn::ConjectureContext ctx = m.conjecture_context(conj);
    if (nn::is_sequence_model(m.config().arch)) {
      std::vector<std::string> tokens;
      for (std::size_t i = 0; i < premise.clauses.size(); ++i) {
        if (i) tokens.emplace_back(fol::Vocabulary::kSepToken);
        auto t = fol::clause_tokens(problem.signature, premise.clauses[i]->literals);
        tokens.insert(tokens.end(), t.begin(), t.end());
      }
      nn::ModelInput in;
      in.tokens = fol::tokenize_tokens(tokens, vocab, m.config().max_len).tokens;
      return m.score(m.embed(in, nn::Tower::Clause), ctx);
    }
    double best = 0.0;
    for (const fol::Clause* c : premise.clauses) {
      nn::ModelInput in = nn::encode_clause(problem.signature, c->literals, vocab, m.config());
      best = std::max(best, m.score(m.embed(in, nn::Tower::Clause), ctx));
    }
    return best;
  };
}

RankedPremises rank_premises(const fol::Problem& problem, const PremiseScorer& scorer) {
  RankedPremises out;
  for (const Premise& p : premises(problem)) out.push_back({p.unit, scorer(problem, p)});
  std::stable_sort(out.begin(), out.end(), [](const RankedPremise& a, const RankedPremise& b) { return a.score > b.score; });
  return out;
}

std::uint64_t ranking_hash(const RankedPremises& ranking) {
  std::string desc;
  char buf[64];
  for (const RankedPremise& r : ranking) {
    std::snprintf(buf, sizeof buf, "%u:%.17g;", r.unit, r.score);
    desc += buf;
  }
  return fol::fnv1a(desc);
}

fol::Problem subproblem(const fol::Problem& problem, const std::vector<std::uint32_t>& units) {
  std::vector<char> keep(problem.units.size(), 0);
  for (std::uint32_t u : units) {
    if (u >= keep.size()) throw Error("premise unit out of range");
    keep[u] = 1;
  }
  fol::Problem sub;
  sub.name = problem.name;
  sub.signature = problem.signature;
  sub.units = problem.units;
  std::uint32_t next = 0;
  auto copy = [&](const fol::Clause& c) {
    fol::Clause n = c;
    n.id = static_cast<fol::ClauseId>(next);
    n.age = next++;
    return n;
  };
  for (const fol::Clause& c : problem.axioms)
    if (c.origin < keep.size() && keep[c.origin]) sub.axioms.push_back(copy(c));
  for (const fol::Clause& c : problem.negated_conjecture) sub.negated_conjecture.push_back(copy(c));
  return sub;
}

std::vector<std::size_t> effective_levels(const std::vector<std::size_t>& levels, std::size_t premise_count) {
  std::vector<std::size_t> out;
  for (std::size_t k : levels) {
    std::size_t c = std::min(k, premise_count);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

CascadeResult cascade_prove(const fol::Problem& problem, const RankedPremises& ranking, const CascadeConfig& config) {
  CascadeResult out;
  out.ranking_hash = ranking_hash(ranking);
  const std::vector<std::size_t> levels = effective_levels(config.levels, ranking.size());
  if (levels.empty()) throw Error("cascade needs at least one level");
  guide::GuidanceConfig level_config = config.guidance;
  level_config.total_budget.amount = config.guidance.total_budget.amount / levels.size();
  if (level_config.mode == guide::Mode::Switched) {
    guide::Budget p1 = config.guidance.effective_phase1();
    p1.amount /= levels.size();
    level_config.phase1_budget = p1;
  }
  for (std::size_t k : levels) {
    std::vector<std::uint32_t> units;
    for (std::size_t i = 0; i < k; ++i) units.push_back(ranking[i].unit);
    out.last_subproblem = subproblem(problem, units);
    out.result = guide::guided_prove(out.last_subproblem, level_config);
    out.transcript.push_back({k, out.result.result.status, out.result.result.processed_count,
                              out.result.result.generated_count, out.result.network_evaluations});
    if (out.result.result.status == sat::ProveStatus::Unsatisfiable) {
      out.proved_level = k;
      break;
    }
  }
  return out;
}

}  // namespace nnsel::premsel
