#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "nnsel/error.hpp"
#include "nnsel/fol/tptp.hpp"
#include "nnsel/guidance/guidance.hpp"
#include "nnsel/harness/corpus.hpp"
#include "nnsel/neural/encode.hpp"

using namespace nnsel;
using namespace nnsel::guide;

namespace {

Scorer make_scorer(std::uint64_t seed = 3, bool zero = false) {
  auto vocab = std::make_shared<fol::Vocabulary>(test::generator_vocabulary());
  nn::ModelConfig mc;
  mc.vocab_size = static_cast<std::uint32_t>(vocab->size());
  mc.dim = 8;
  mc.hidden = 8;
  mc.cnn_layers = 2;
  mc.cnn_patch = 3;
  mc.vocab_hash = vocab->hash();
  auto model = std::make_shared<nn::Model>(zero ? nn::Model::zeros(mc) : nn::Model(mc, seed));
  return Scorer{model, vocab};
}

GuidanceConfig config_for(Mode mode, std::uint64_t total = 300) {
  GuidanceConfig c;
  c.mode = mode;
  if (mode != Mode::Auto) c.scorer = make_scorer();
  c.total_budget = {BudgetUnit::ProcessedClauses, total};
  c.limits.max_generated = 100000;
  return c;
}

// A handful of small corpus problems that need a few dozen selections.
const std::vector<fol::Problem>& sample_problems() {
  static const std::vector<fol::Problem> problems = [] {
    std::vector<fol::Problem> out;
    std::map<std::string, int> per_family;
    for (const auto& p : harness::generate_corpus()) {
      if (p.family == "distractor" || per_family[p.family]++ >= 2) continue;
      out.push_back(harness::parse(p));
    }
    return out;
  }();
  return problems;
}

const char* const kProblem =
    "cnf(t, axiom, (~q(X,Y) | ~q(Y,Z) | q(X,Z))).\n"
    "cnf(a1, axiom, q(a,b)).\ncnf(a2, axiom, q(b,c)).\ncnf(a3, axiom, q(c,f(a))).\n"
    "cnf(a4, axiom, (p(X) | ~q(X,X))).\ncnf(a5, axiom, (r | ~p(a))).\n"
    "cnf(g, negated_conjecture, ~q(a,f(a))).";

}  // namespace

TEST_CASE("mode names round trip") {
  for (Mode m : {Mode::Auto, Mode::PureNN, Mode::Hybrid, Mode::Switched}) CHECK(parse_mode(mode_name(m)) == m);
  CHECK_THROWS_AS(parse_mode("neural"), Error);
}

TEST_CASE("config validation") {
  GuidanceConfig pure = config_for(Mode::PureNN);
  pure.scorer = {};
  CHECK_THROWS_AS(pure.validate(), Error);

  GuidanceConfig sw = config_for(Mode::Switched, 300);
  sw.phase1_budget = Budget{BudgetUnit::ProcessedClauses, 300};
  CHECK_THROWS_AS(sw.validate(), Error);
  sw.phase1_budget = Budget{BudgetUnit::ProcessedClauses, 299};
  CHECK_NOTHROW(sw.validate());

  GuidanceConfig split = config_for(Mode::Switched, 300);
  CHECK(split.effective_phase1().amount == 200);

  Scorer mismatched = make_scorer();
  auto other = std::make_shared<fol::Vocabulary>(std::vector<std::string>{
      fol::Vocabulary::kPadToken, fol::Vocabulary::kOovToken, fol::Vocabulary::kSepToken, "zz"});
  mismatched.vocab = other;
  CHECK_THROWS_AS(mismatched.validate(), Error);
  fol::Problem p = fol::parse_tptp(kProblem);
  CHECK_THROWS_AS(NeuralWeight(p, mismatched), Error);
}

TEST_CASE("neural weight selects the most probable clause first") {
  test::Gen g(5);
  for (int trial = 0; trial < 10; ++trial) {
    fol::Problem p = fol::parse_tptp(kProblem);
    std::deque<fol::Clause> clauses;
    for (std::uint32_t i = 0; i < 60; ++i) {
      fol::Clause c;
      c.id = static_cast<fol::ClauseId>(i);
      c.age = i;
      c.literals = fol::parse_clause(test::random_clause_text(g), p.signature);
      clauses.push_back(std::move(c));
    }
    auto nw = std::make_shared<NeuralWeight>(p, make_scorer(trial + 1));
    heur::SelectionSchedule s;
    s.add_entry(1, nw);
    for (const fol::Clause& c : clauses) s.insert(c);
    std::vector<double> picked;
    std::vector<std::uint32_t> ids;
    while (auto id = s.select_next()) {
      picked.push_back(nw->cache().at(fol::index(*id)));
      ids.push_back(fol::index(*id));
    }
    REQUIRE(picked.size() == 60);
    for (std::size_t i = 1; i < picked.size(); ++i) {
      CHECK(picked[i] <= picked[i - 1]);
      if (picked[i] == picked[i - 1]) CHECK(ids[i] > ids[i - 1]);
    }
    CHECK(nw->evaluate(clauses[0]) == -nw->cache().at(0));
    CHECK(nw->network_evaluations() == 60);
  }
}

TEST_CASE("score batch contracts") {
  fol::Problem p = fol::parse_tptp(kProblem);
  test::Gen g(9);
  std::deque<fol::Clause> clauses;
  std::vector<const fol::Clause*> ptrs;
  for (std::uint32_t i = 0; i < 100; ++i) {
    fol::Clause c;
    c.id = static_cast<fol::ClauseId>(i);
    c.literals = fol::parse_clause(test::random_clause_text(g), p.signature);
    clauses.push_back(std::move(c));
    ptrs.push_back(&clauses.back());
  }
  Scorer sc = make_scorer();
  nn::ConjectureContext ctx = sc.model->conjecture_context(
      nn::encode_conjecture(p.signature, p.negated_conjecture, *sc.vocab, sc.model->config()));

  ScoreCache c32, c1, c64;
  CHECK(score_batch(ptrs, p.signature, sc, ctx, c32, 32) == 4);
  CHECK(score_batch(ptrs, p.signature, sc, ctx, c1, 1) == 100);
  CHECK(score_batch(ptrs, p.signature, sc, ctx, c64, 64) == 2);
  CHECK(c1 == c64);
  CHECK(c1 == c32);
  CHECK(score_batch(ptrs, p.signature, sc, ctx, c32, 32) == 0);

  ScoreCache twice;
  std::vector<const fol::Clause*> dup{ptrs[0], ptrs[0]};
  CHECK(score_batch(dup, p.signature, sc, ctx, twice, 8) == 1);
  CHECK(twice.size() == 1);
  CHECK_THROWS_AS(score_batch(dup, p.signature, sc, ctx, twice, 0), Error);
}

TEST_CASE("build schedule per mode") {
  GuidanceConfig c = config_for(Mode::Auto);
  CHECK(build_schedule(c) == heur::auto208_spec());
  c.mode = Mode::PureNN;
  heur::ScheduleSpec pure = build_schedule(c);
  REQUIRE(pure.entries.size() == 1);
  CHECK(pure.entries[0].fn.kind == heur::WeightKind::NeuralScore);
  c.mode = Mode::Hybrid;
  heur::ScheduleSpec hybrid = build_schedule(c);
  CHECK(hybrid.weights() == std::vector<std::uint32_t>{1, 1, 4, 1, 1, 4});
  CHECK(hybrid.cycle_length() == 12);
  c.nn_picks = 2;
  c.auto_cycle_picks = 3;
  CHECK(build_schedule(c).weights() == std::vector<std::uint32_t>{2, 3, 12, 3, 3, 12});
}

TEST_CASE("hybrid cycle is one neural pick per eleven auto picks") {
  fol::Problem p = fol::parse_tptp(kProblem);
  test::Gen g(2);
  std::deque<fol::Clause> clauses;
  auto fresh = [&] {
    fol::Clause c;
    c.id = static_cast<fol::ClauseId>(clauses.size());
    c.age = clauses.size();
    c.literals = fol::parse_clause(test::random_clause_text(g), p.signature);
    clauses.push_back(std::move(c));
    return &clauses.back();
  };
  for (int i = 0; i < 40; ++i) fresh();
  GuidanceConfig c = config_for(Mode::Hybrid);
  heur::SelectionSchedule s = heur::instantiate(build_schedule(c), p, [&](const fol::Problem& prob) {
    return std::make_shared<NeuralWeight>(prob, c.scorer);
  });
  for (const fol::Clause& cl : clauses) s.insert(cl);
  std::vector<std::size_t> entries;
  for (int i = 0; i < 120; ++i) {
    REQUIRE(s.select_next());
    entries.push_back(s.last_entry());
    s.insert(*fresh());
  }
  for (std::size_t round = 0; round < 10; ++round) {
    CHECK(entries[round * 12] == 0);
    for (std::size_t k = 1; k < 12; ++k) CHECK(entries[round * 12 + k] != 0);
  }
  CHECK(s.picks(0) == 10);
}

TEST_CASE("auto mode never touches the network and pure mode only uses it") {
  for (const fol::Problem& p : sample_problems()) {
    GuidedResult a = guided_prove(p, config_for(Mode::Auto));
    CHECK(a.network_evaluations == 0);
    CHECK(a.conjecture_embeddings == 0);

    GuidanceConfig pc = config_for(Mode::PureNN);
    auto handle = std::make_shared<std::shared_ptr<NeuralWeight>>();
    sat::Saturation sat(p);
    sat.attach(heur::instantiate(build_schedule(pc), p, [&](const fol::Problem& prob) {
      *handle = std::make_shared<NeuralWeight>(prob, pc.scorer);
      return *handle;
    }));
    sat::SearchLimits lim;
    lim.max_processed = 100;
    sat.run(lim);
    REQUIRE(sat.schedule().entry_count() == 1);
    CHECK(sat.schedule().function(0).is_neural());

    GuidedResult r = guided_prove(p, pc);
    CHECK(r.conjecture_embeddings == 1);
    CHECK(r.network_evaluations > 0);
  }
}

TEST_CASE("constant model orders pure guidance by clause id") {
  for (const fol::Problem& p : sample_problems()) {
    GuidanceConfig c = config_for(Mode::PureNN, 200);
    c.scorer = make_scorer(1, true);
    GuidedResult r = guided_prove(p, c);
    for (std::size_t i = 1; i < r.selections.size(); ++i)
      CHECK(fol::index(r.selections[i]) > fol::index(r.selections[i - 1]));
  }
}

TEST_CASE("cache transparency") {
  for (const fol::Problem& p : sample_problems()) {
    GuidanceConfig c = config_for(Mode::Hybrid, 150);
    GuidedResult cached = guided_prove(p, c);
    c.cache = false;
    GuidedResult uncached = guided_prove(p, c);
    CHECK(cached.selections == uncached.selections);
    CHECK(cached.result.status == uncached.result.status);
  }
}

TEST_CASE("switched mode contracts") {
  for (const fol::Problem& p : sample_problems()) {
    GuidanceConfig c = config_for(Mode::Switched, 300);
    c.phase1_budget = Budget{BudgetUnit::ProcessedClauses, 40};
    GuidedResult r = switched_prove(p, c);
    CHECK(r.phase1_processed <= 40);
    CHECK(r.evaluations_after_switch == 0);
    if (r.switched) {
      std::set<fol::ClauseId> fin(r.final_processed.begin(), r.final_processed.end());
      for (fol::ClauseId id : r.processed_at_switch) CHECK(fin.contains(id));
      std::set<fol::ClauseId> uniq(r.selections.begin(), r.selections.end());
      CHECK(uniq.size() == r.selections.size());
    }
    CHECK_THROWS_AS(switched_prove(p, config_for(Mode::Hybrid)), Error);
  }
}

TEST_CASE("switched degenerate budgets") {
  for (const fol::Problem& p : sample_problems()) {
    GuidanceConfig sw = config_for(Mode::Switched, 300);
    sw.phase1_budget = Budget{BudgetUnit::ProcessedClauses, 0};
    GuidedResult s = switched_prove(p, sw);
    GuidedResult a = guided_prove(p, config_for(Mode::Auto, 300));
    CHECK(s.selections == a.selections);
    CHECK(s.result.status == a.result.status);

    GuidedResult h = guided_prove(p, config_for(Mode::Hybrid, 300));
    if (h.result.status != sat::ProveStatus::Unsatisfiable) continue;
    sw.phase1_budget = Budget{BudgetUnit::ProcessedClauses, 299};
    GuidedResult late = switched_prove(p, sw);
    CHECK(!late.switched);
    CHECK(late.selections == h.selections);
  }
}
