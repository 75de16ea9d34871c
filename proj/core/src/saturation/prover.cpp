#include "nnsel/saturation/prover.hpp"

#include <algorithm>

#include "nnsel/error.hpp"
#include "nnsel/fol/equality.hpp"
#include "nnsel/saturation/inference.hpp"
#include "nnsel/saturation/subsumption.hpp"

namespace nnsel::sat {

const char* status_name(ProveStatus s) noexcept {
  switch (s) {
    case ProveStatus::Unsatisfiable: return "Unsatisfiable";
    case ProveStatus::Satisfiable: return "Satisfiable";
    case ProveStatus::ResourceOut: return "ResourceOut";
  }
  return "?";
}

const char* limit_name(LimitKind k) noexcept {
  switch (k) {
    case LimitKind::None: return "none";
    case LimitKind::ProcessedClauses: return "processed";
    case LimitKind::GeneratedClauses: return "generated";
    case LimitKind::WallClock: return "time";
    case LimitKind::Memory: return "memory";
  }
  return "?";
}

std::string szs_line(const ProveResult& r, const std::string& problem_name) {
  return std::string("% SZS status ") + status_name(r.status) + " for " + problem_name;
}

namespace {

std::uint64_t clause_bytes(const fol::Clause& c) {
  return sizeof(fol::Clause) + c.literals.size() * sizeof(fol::Literal) +
         c.term_nodes() * sizeof(fol::Term) + c.parents.size() * sizeof(fol::ClauseId);
}

}  // namespace

Saturation::Saturation(const fol::Problem& problem, bool equality_axioms)
    : problem_(problem), start_(std::chrono::steady_clock::now()) {
  for (const fol::Clause* c : problem.input_clauses()) {
    fol::Clause copy = *c;
    copy.parents.clear();
    copy.rule = "input";
    add(std::move(copy));
  }
  if (equality_axioms) {
    for (auto& lits : fol::equality_axioms(problem.signature)) {
      fol::Clause c;
      c.literals = std::move(lits);
      c.role = fol::ClauseRole::Axiom;
      c.rule = "eq";
      add(std::move(c));
    }
  }
  for (const auto& c : store_) {
    if (c.empty()) {
      input_empty_ = c.id;
      break;
    }
  }
}

fol::ClauseId Saturation::add(fol::Clause c) {
  const auto id = static_cast<fol::ClauseId>(store_.size());
  c.id = id;
  c.age = store_.size();
  memory_ += clause_bytes(c);
  masks_.push_back(literal_mask(c.literals));
  store_.push_back(std::move(c));
  return id;
}

std::uint64_t Saturation::elapsed_ms() const {
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                        std::chrono::steady_clock::now() - start_)
                                        .count());
}

void Saturation::attach(heur::SelectionSchedule schedule) {
  std::vector<fol::ClauseId> live;
  if (attached_) {
    live = schedule_.live_ids();
  } else {
    for (const auto& c : store_) live.push_back(c.id);
  }
  schedule_ = std::move(schedule);
  attached_ = true;
  std::vector<const fol::Clause*> batch;
  batch.reserve(live.size());
  for (fol::ClauseId id : live) batch.push_back(&store_[index(id)]);
  if (!batch.empty()) schedule_.insert(batch);
}

StepOutcome Saturation::step() {
  if (!attached_) throw Error("no selection schedule attached");
  if (proof_) return StepOutcome::ProofFound;
  const auto picked = schedule_.select_next();
  if (!picked) return StepOutcome::Saturated;
  ++steps_;
  selections_.push_back(*picked);
  const fol::Clause given = store_[index(*picked)];

  if (fol::is_tautology(given.literals)) {
    ++discarded_;
    return StepOutcome::Continue;
  }
  const std::uint64_t gmask = masks_[index(given.id)];
  for (fol::ClauseId p : processed_) {
    const std::uint64_t pmask = masks_[index(p)];
    if ((pmask & ~gmask) != 0) continue;
    if (subsumes(store_[index(p)], given)) {
      ++discarded_;
      return StepOutcome::Continue;
    }
  }

  // Only processed clauses sharing a predicate can resolve with the given clause.
  std::vector<std::uint32_t> partners;
  for (const auto& l : given.literals) {
    auto it = by_predicate_.find(fol::index(l.predicate()));
    if (it != by_predicate_.end()) partners.insert(partners.end(), it->second.begin(), it->second.end());
  }
  std::sort(partners.begin(), partners.end());
  partners.erase(std::unique(partners.begin(), partners.end()), partners.end());

  std::vector<fol::Clause> fresh;
  for (std::uint32_t p : partners) {
    for (auto& r : resolve(given, store_[p])) fresh.push_back(std::move(r));
  }
  for (auto& r : resolve(given, given)) fresh.push_back(std::move(r));
  for (auto& f : factor(given)) fresh.push_back(std::move(f));

  processed_.push_back(given.id);
  {
    std::vector<std::uint32_t> preds;
    for (const auto& l : given.literals) preds.push_back(fol::index(l.predicate()));
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
    for (auto pr : preds) by_predicate_[pr].push_back(fol::index(given.id));
  }

  const std::size_t first_new = store_.size();
  for (auto& c : fresh) {
    const fol::ClauseId id = add(std::move(c));
    ++generated_;
    if (store_[index(id)].empty()) {
      proof_ = build_proof(id);
      return StepOutcome::ProofFound;
    }
  }
  std::vector<const fol::Clause*> batch;
  batch.reserve(store_.size() - first_new);
  for (std::size_t i = first_new; i < store_.size(); ++i) batch.push_back(&store_[i]);
  if (!batch.empty()) schedule_.insert(batch);
  return StepOutcome::Continue;
}

ProveResult Saturation::run(const SearchLimits& limits) {
  ProveResult r;
  auto finish = [&](ProveStatus status, LimitKind limit) {
    r.status = status;
    r.limit = limit;
    r.proof = status == ProveStatus::Unsatisfiable ? proof_ : std::nullopt;
    r.processed_count = steps_;
    r.generated_count = generated_;
    r.wall_ms = elapsed_ms();
    return r;
  };
  if (!proof_ && input_empty_) proof_ = build_proof(*input_empty_);
  for (;;) {
    if (proof_) return finish(ProveStatus::Unsatisfiable, LimitKind::None);
    if (limits.max_processed && steps_ >= *limits.max_processed) {
      return finish(ProveStatus::ResourceOut, LimitKind::ProcessedClauses);
    }
    if (generated_ >= limits.max_generated) return finish(ProveStatus::ResourceOut, LimitKind::GeneratedClauses);
    if (limits.max_memory_bytes && memory_ >= *limits.max_memory_bytes) {
      return finish(ProveStatus::ResourceOut, LimitKind::Memory);
    }
    if (limits.max_wall_ms && elapsed_ms() >= *limits.max_wall_ms) {
      return finish(ProveStatus::ResourceOut, LimitKind::WallClock);
    }
    switch (step()) {
      case StepOutcome::ProofFound: return finish(ProveStatus::Unsatisfiable, LimitKind::None);
      case StepOutcome::Saturated: return finish(ProveStatus::Satisfiable, LimitKind::None);
      case StepOutcome::Continue: break;
    }
  }
}

Proof Saturation::build_proof(fol::ClauseId empty) const {
  Proof proof;
  proof.empty_clause_id = empty;
  std::vector<fol::ClauseId> stack{empty};
  while (!stack.empty()) {
    const fol::ClauseId id = stack.back();
    stack.pop_back();
    if (!proof.used_ids.insert(id).second) continue;
    const fol::Clause& c = store_[index(id)];
    proof.derivation[id] = DerivationStep{id, c.literals, c.parents, c.rule, c.role};
    for (fol::ClauseId p : c.parents) stack.push_back(p);
  }
  return proof;
}

ProveResult prove(const fol::Problem& problem, const SearchConfig& config) {
  Saturation sat(problem, config.equality_axioms);
  sat.attach(heur::instantiate(config.schedule, problem, config.neural));
  return sat.run(config.limits);
}

}  // namespace nnsel::sat
