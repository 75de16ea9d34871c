#include "nnsel/guidance/guidance.hpp"

#include <unordered_set>

#include "nnsel/error.hpp"
#include "nnsel/neural/encode.hpp"

namespace nnsel::guide {

namespace {

sat::SearchLimits with_budget(sat::SearchLimits limits, const Budget& b) {
  if (b.unit == BudgetUnit::ProcessedClauses)
    limits.max_processed = b.amount;
  else
    limits.max_wall_ms = b.amount;
  return limits;
}

double probability(const fol::Signature& sig, const Scorer& scorer, const nn::ConjectureContext& conjecture,
                   const fol::Clause& c) {
  const nn::Model& m = *scorer.model;
  nn::ModelInput in = nn::encode_clause(sig, c.literals, *scorer.vocab, m.config());
  return m.score(m.embed(in, nn::Tower::Clause), conjecture);
}

}  // namespace

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Auto: return "auto";
    case Mode::PureNN: return "pure";
    case Mode::Hybrid: return "hybrid";
    case Mode::Switched: return "switched";
  }
  return "auto";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::Auto, Mode::PureNN, Mode::Hybrid, Mode::Switched})
    if (mode_name(m) == name) return m;
  throw Error("unknown guidance mode: " + std::string(name));
}

void Scorer::validate() const {
  if (!model || !vocab) throw Error("guidance needs a model and its vocabulary");
  if (model->config().vocab_hash != vocab->hash())
    throw Error("model was trained with a different vocabulary");
  if (model->config().vocab_size != vocab->size()) throw Error("model and vocabulary sizes differ");
}

Budget GuidanceConfig::effective_phase1() const {
  if (phase1_budget) return *phase1_budget;
  return Budget{total_budget.unit, total_budget.amount * 2 / 3};
}

void GuidanceConfig::validate() const {
  if (mode != Mode::Auto) scorer.validate();
  if (nn_picks == 0 && (mode == Mode::Hybrid || mode == Mode::Switched))
    throw Error("hybrid guidance needs at least one NN pick per cycle");
  if (batch_size == 0) throw Error("batch size must be positive");
  if (mode == Mode::Switched) {
    Budget p1 = effective_phase1();
    if (p1.unit == total_budget.unit && p1.amount >= total_budget.amount)
      throw Error("phase-1 budget must be below the total budget");
  }
}

std::size_t score_batch(std::span<const fol::Clause* const> clauses, const fol::Signature& sig, const Scorer& scorer,
                        const nn::ConjectureContext& conjecture, ScoreCache& cache, std::size_t batch_size) {
  if (batch_size == 0) throw Error("batch size must be positive");
  std::vector<const fol::Clause*> pending;
  std::unordered_set<std::uint32_t> seen;
  for (const fol::Clause* c : clauses) {
    const std::uint32_t id = fol::index(c->id);
    if (!cache.contains(id) && seen.insert(id).second) pending.push_back(c);
  }
  std::size_t calls = 0;
  for (std::size_t start = 0; start < pending.size(); start += batch_size) {
    ++calls;
    const std::size_t end = std::min(pending.size(), start + batch_size);
    for (std::size_t i = start; i < end; ++i)
      cache.emplace(fol::index(pending[i]->id), probability(sig, scorer, conjecture, *pending[i]));
  }
  return calls;
}

NeuralWeight::NeuralWeight(const fol::Problem& problem, Scorer scorer, std::size_t batch_size, bool cache)
    : problem_(problem), scorer_(std::move(scorer)), batch_size_(batch_size), use_cache_(cache) {
  scorer_.validate();
  nn::ModelInput conj = nn::encode_conjecture(problem.signature, problem.negated_conjecture, *scorer_.vocab,
                                              scorer_.model->config());
  conjecture_ = scorer_.model->conjecture_context(conj);
  ++conjecture_embeddings_;
}

void NeuralWeight::prepare(std::span<const fol::Clause* const> batch) {
  if (!use_cache_) return;
  const std::size_t before = cache_.size();
  batch_calls_ += score_batch(batch, problem_.signature, scorer_, conjecture_, cache_, batch_size_);
  network_evaluations_ += cache_.size() - before;
}

double NeuralWeight::score_one(const fol::Clause& c) {
  ++network_evaluations_;
  ++batch_calls_;
  return probability(problem_.signature, scorer_, conjecture_, c);
}

double NeuralWeight::weight(const fol::Clause& c) {
  if (!use_cache_) return -score_one(c);
  auto it = cache_.find(fol::index(c.id));
  if (it == cache_.end()) it = cache_.emplace(fol::index(c.id), score_one(c)).first;
  return -it->second;
}

heur::ScheduleSpec build_schedule(const GuidanceConfig& config) {
  heur::ScheduleEntrySpec nn_entry;
  nn_entry.fn.kind = heur::WeightKind::NeuralScore;
  switch (config.mode) {
    case Mode::Auto:
      return config.auto_schedule;
    case Mode::PureNN: {
      heur::ScheduleSpec spec;
      spec.entries.push_back(nn_entry);
      return spec;
    }
    case Mode::Hybrid:
    case Mode::Switched: {
      heur::ScheduleSpec spec;
      nn_entry.weight = config.nn_picks;
      spec.entries.push_back(nn_entry);
      for (heur::ScheduleEntrySpec e : config.auto_schedule.entries) {
        e.weight *= config.auto_cycle_picks;
        spec.entries.push_back(e);
      }
      return spec;
    }
  }
  return config.auto_schedule;
}

namespace {

struct NeuralHandle {
  std::shared_ptr<NeuralWeight> fn;
};

heur::NeuralFactory factory_for(const GuidanceConfig& config, std::shared_ptr<NeuralHandle> handle) {
  return [config, handle](const fol::Problem& problem) {
    handle->fn = std::make_shared<NeuralWeight>(problem, config.scorer, config.batch_size, config.cache);
    return handle->fn;
  };
}

void collect(GuidedResult& out, const sat::Saturation& sat, const NeuralHandle& handle) {
  out.selections = sat.selections();
  out.final_processed = sat.processed();
  if (handle.fn) {
    out.network_evaluations = handle.fn->network_evaluations();
    out.batch_calls = handle.fn->batch_calls();
    out.conjecture_embeddings = handle.fn->conjecture_embeddings();
  }
}

}  // namespace

GuidedResult guided_prove(const fol::Problem& problem, const GuidanceConfig& config) {
  config.validate();
  if (config.mode == Mode::Switched) return switched_prove(problem, config);
  auto handle = std::make_shared<NeuralHandle>();
  sat::Saturation sat(problem, config.equality_axioms);
  sat.attach(heur::instantiate(build_schedule(config), problem, factory_for(config, handle)));
  GuidedResult out;
  out.mode = config.mode;
  out.result = sat.run(with_budget(config.limits, config.total_budget));
  collect(out, sat, *handle);
  return out;
}

GuidedResult switched_prove(const fol::Problem& problem, const GuidanceConfig& config) {
  if (config.mode != Mode::Switched) throw Error("switched_prove needs Switched mode");
  config.validate();
  const Budget p1 = config.effective_phase1();
  const sat::SearchLimits total = with_budget(config.limits, config.total_budget);

  auto handle = std::make_shared<NeuralHandle>();
  sat::Saturation sat(problem, config.equality_axioms);
  sat.attach(heur::instantiate(build_schedule(config), problem, factory_for(config, handle)));
  GuidedResult out;
  out.mode = Mode::Switched;
  out.result = sat.run(with_budget(total, p1));
  const bool budget_fired =
      out.result.status == sat::ProveStatus::ResourceOut &&
      out.result.limit == (p1.unit == BudgetUnit::ProcessedClauses ? sat::LimitKind::ProcessedClauses
                                                                    : sat::LimitKind::WallClock);
  out.phase1_processed = sat.steps();
  if (budget_fired) {
    out.switched = true;
    out.processed_at_switch = sat.processed();
    const std::uint64_t evals_at_switch = handle->fn ? handle->fn->network_evaluations() : 0;
    sat.attach(heur::instantiate(config.auto_schedule, problem));
    out.result = sat.run(total);
    collect(out, sat, *handle);
    out.evaluations_after_switch = out.network_evaluations - evals_at_switch;
    return out;
  }
  collect(out, sat, *handle);
  return out;
}

}  // namespace nnsel::guide
