// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "generators.hpp"
#include "nnsel/datagen/datagen.hpp"
#include "nnsel/fol/tptp.hpp"
#include "nnsel/guidance/guidance.hpp"
#include "nnsel/harness/corpus.hpp"
#include "nnsel/harness/experiment.hpp"
#include "nnsel/heuristics/schedule.hpp"
#include "nnsel/heuristics/weight.hpp"
#include "nnsel/neural/checkpoint.hpp"
#include "nnsel/neural/graph.hpp"
#include "nnsel/neural/model.hpp"
#include "nnsel/neural/training.hpp"
#include "nnsel/premsel/premsel.hpp"
#include "nnsel/saturation/proof.hpp"
#include "nnsel/saturation/prover.hpp"
#include "oracles.hpp"

using namespace nnsel;
namespace fs = std::filesystem;

namespace {

// ---- pinned parameters -----------------------------------------------------

constexpr std::size_t kEprInstances = 60;
constexpr std::size_t kEprMaxClauses = 12;
constexpr std::uint64_t kRoundRobinPicks = 10000;
constexpr double kGradTolerance = 1e-3;
constexpr double kGradStep = 1e-4;
constexpr std::size_t kReceptiveField = 127;
constexpr std::size_t kToyExamples = 256;
constexpr double kToyAccuracy = 0.99;
constexpr std::uint32_t kTrainSteps = 2000;
constexpr double kCorpusAccuracy = 0.65;
constexpr std::uint32_t kCorpusDim = 16;
constexpr std::uint64_t kTraceProcessed = 5000;
constexpr std::uint64_t kTraceGenerated = 100000;
constexpr std::uint64_t kCorpusBudget = 2000;
constexpr std::uint64_t kCorpusGenerated = 10000;
constexpr std::size_t kSwitchedProblems = 10;
constexpr std::uint64_t kSwitchedTotal = 300;
constexpr std::uint64_t kSwitchedPhase1 = 40;
constexpr std::size_t kHeldOutMin = 20;
constexpr std::uint64_t kHeldOutSeed = 2;
const std::vector<std::uint64_t> kCascadeBudgets{150, 200, 250, 300, 350, 400, 500, 600, 800, 1000};
const std::vector<std::size_t> kCascadeLevels{32, 64, 128, 256};
constexpr std::size_t kScoreInputs = 100;

// ---- reporting ---------------------------------------------------------------

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  int id = 0;
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0.0;
  double limit = 0.0;
};

std::vector<Outcome> outcomes;

void report(int id, std::string name, bool ok, std::string detail, double seconds, double limit) {
  Outcome o{id, std::move(name), ok && seconds < limit, std::move(detail), seconds, limit};
  std::ostringstream line;
  line << (o.ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << o.id << "  " << o.name << ": " << o.detail
       << std::fixed << std::setprecision(1) << " [" << o.seconds << " s, limit " << o.limit << " s]";
  std::cout << line.str() << std::endl;
  outcomes.push_back(std::move(o));
}

void note(const std::string& text) { std::cout << "      " << text << std::endl; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

// ---- shared state ----------------------------------------------------------------

struct Trained {
  std::vector<harness::CorpusProblem> corpus;
  std::vector<fol::Problem> problems;
  std::shared_ptr<fol::Vocabulary> vocab;
  std::shared_ptr<nn::Model> model;
  double seconds = 0.0;
  bool ok = false;
};

data::TraceOptions trace_options() {
  data::TraceOptions o;
  o.baseline.limits.max_processed = kTraceProcessed;
  o.baseline.limits.max_generated = kTraceGenerated;
  return o;
}

nn::ModelConfig corpus_model_config(const fol::Vocabulary& vocab) {
  nn::ModelConfig c;
  c.arch = nn::Architecture::Cnn;
  c.vocab_size = static_cast<std::uint32_t>(vocab.size());
  c.dim = kCorpusDim;
  c.hidden = 64;
  c.vocab_hash = vocab.hash();
  return c;
}

guide::Scorer scorer(const Trained& t) { return {t.model, t.vocab}; }

// ---- 2: FIFO prover vs ground saturation oracle -------------------------------------

void oracle_equivalence() {
  const auto t0 = Clock::now();
  test::Gen g(2024);
  std::size_t agree = 0, unsat = 0, saturated = 0, unverified = 0;
  for (std::size_t i = 0; i < kEprInstances; ++i) {
    fol::Problem p = fol::parse_tptp(test::random_epr_problem(g, kEprMaxClauses), "epr" + std::to_string(i));
    const test::Verdict oracle = test::ground_bfs_saturation(p);
    sat::SearchConfig c;
    c.schedule = heur::fifo_spec();
    c.limits.max_processed = 200000;
    const sat::ProveResult r = sat::prove(p, c);
    const bool prover_unsat = r.status == sat::ProveStatus::Unsatisfiable;
    const bool prover_sat = r.status == sat::ProveStatus::Satisfiable;
    if (oracle == test::Verdict::Unsatisfiable) {
      ++unsat;
      agree += prover_unsat;
    } else {
      ++saturated;
      agree += prover_sat;
    }
    if (r.proof && !sat::verify_proof(*r.proof, p).ok) ++unverified;
  }
  const bool ok = agree == kEprInstances && unverified == 0 && unsat > 0 && saturated > 0;
  report(2, "oracle equivalence", ok,
         std::to_string(agree) + "/" + std::to_string(kEprInstances) + " agree (" + std::to_string(unsat) +
             " unsat, " + std::to_string(saturated) + " saturated, <= " + std::to_string(kEprMaxClauses) +
             " clauses), " + std::to_string(unverified) + " unverified proofs",
         since(t0), 120);
}

// ---- 3: round robin -------------------------------------------------------------

void round_robin() {
  const auto t0 = Clock::now();
  fol::Signature sig;
  std::deque<fol::Clause> pool;
  test::Gen gen(1);
  auto fresh = [&]() -> const fol::Clause& {
    const auto id = static_cast<std::uint32_t>(pool.size());
    fol::Clause c;
    c.id = static_cast<fol::ClauseId>(id);
    c.age = id;
    c.literals = fol::parse_clause(test::random_clause_text(gen), sig);
    pool.push_back(std::move(c));
    return pool.back();
  };
  heur::SelectionSchedule s;
  s.add_entry(1, std::make_shared<heur::FifoWeight>());
  s.add_entry(4, std::make_shared<heur::SymbolCountWeight>(2, 1));
  for (int i = 0; i < 8; ++i) s.insert(fresh());
  bool nonempty = true;
  for (std::uint64_t i = 0; i < kRoundRobinPicks; ++i) {
    nonempty &= !s.empty();
    if (!s.select_next()) break;
    s.insert(fresh());
  }
  const bool ok = nonempty && s.picks(0) == 2000 && s.picks(1) == 8000;
  report(3, "round-robin exactness", ok,
         "FIFO " + std::to_string(s.picks(0)) + ", SymbolCount " + std::to_string(s.picks(1)) + " of " +
             std::to_string(s.total_picks()) + " (expected 2000/8000)",
         since(t0), 10);
}

// ---- 4: gradient checks -------------------------------------------------------------

void gradient_checks() {
  const auto t0 = Clock::now();
  const fol::Vocabulary vocab = test::generator_vocabulary();
  auto base = [&](nn::Architecture a) {
    nn::ModelConfig c;
    c.arch = a;
    c.vocab_size = static_cast<std::uint32_t>(vocab.size());
    c.dim = 8;
    c.hidden = 8;
    return c;
  };
  std::vector<std::pair<std::string, nn::ModelConfig>> cases;
  cases.emplace_back("cnn", base(nn::Architecture::Cnn));
  nn::ModelConfig wn = base(nn::Architecture::WaveNet);
  wn.wavenet_blocks = 1;
  wn.wavenet_layers = 3;
  cases.emplace_back("wavenet", wn);
  cases.emplace_back("treernn", base(nn::Architecture::TreeRnn));
  cases.emplace_back("treelstm", base(nn::Architecture::TreeLstm));

  bool ok = true;
  std::string detail;
  for (const auto& [name, config] : cases) {
    // Instances whose steps straddle a ReLU or max-pool switch are redrawn.
    test::GradCheck check;
    std::uint64_t seed = 1;
    nn::Model m;
    for (; seed <= 20; ++seed) {
      test::Gen gen(seed);
      m = nn::Model(config, seed);
      for (nn::Parameter& p : m.parameters())
        if (p.value.shape.size() == 1)
          for (double& v : p.value.data)
            v = (gen.coin() ? 1 : -1) * (0.02 + static_cast<double>(gen.below(1000)) / 12500.0);
      auto batch = test::random_examples(gen, config, vocab, 2);
      check = test::finite_difference_check(m, batch, false, 1234, kGradStep);
      if (check.kinks == 0) break;
    }
    const bool case_ok =
        check.kinks == 0 && check.checked == m.parameter_count() && check.max_rel_error <= kGradTolerance;
    ok &= case_ok;
    if (!detail.empty()) detail += ", ";
    detail += name + " " + fmt(check.max_rel_error, 3) + " over " + std::to_string(check.checked) + " (seed " +
              std::to_string(seed) + ")";
  }
  report(4, "gradient checks", ok, "max rel error " + detail + "; tolerance " + fmt(kGradTolerance), since(t0), 300);
}

// ---- 6: WaveNet structure --------------------------------------------------------------

void wavenet_structure() {
  const auto t0 = Clock::now();
  nn::ModelConfig c;
  c.arch = nn::Architecture::WaveNet;
  c.vocab_size = static_cast<std::uint32_t>(test::generator_vocabulary().size());
  c.dim = 4;
  c.hidden = 4;
  c.wavenet_blocks = 1;
  c.wavenet_layers = 7;
  const nn::Model m(c, 3);
  const std::size_t T = 400, p = 200, d = c.dim;
  nn::Tensor x({T, d});
  test::Gen gen(5);
  for (double& v : x.data) v = static_cast<double>(gen.below(1000)) / 1000.0 - 0.5;
  nn::Tensor x2 = x;
  for (std::size_t k = 0; k < d; ++k) x2[p * d + k] += 0.25;
  nn::Graph g;
  const nn::Tensor a = g.value(m.wavenet_block(g, g.constant(x), nn::Tower::Clause, 0, nn::ForwardMode{}));
  const nn::Tensor b = g.value(m.wavenet_block(g, g.constant(x2), nn::Tower::Clause, 0, nn::ForwardMode{}));
  std::size_t lo = T, hi = 0, mismatches = 0;
  for (std::size_t i = 0; i < T; ++i) {
    bool changed = false;
    for (std::size_t k = 0; k < d; ++k) changed |= a[i * d + k] != b[i * d + k];
    if (changed) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
    const bool inside = i + kReceptiveField >= p && i <= p + kReceptiveField;
    mismatches += changed != inside;
  }

  const nn::Model zero = nn::Model::zeros(c);
  nn::Tensor y({9, d});
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::sin(static_cast<double>(i));
  nn::Graph gz;
  nn::Var z = gz.constant(y);
  for (std::size_t l = 0; l < c.wavenet_layers; ++l) z = zero.wavenet_layer(gz, z, nn::Tower::Clause, 0, l);
  const bool identity = gz.value(z) == y;

  const bool ok = mismatches == 0 && lo + kReceptiveField == p && hi == p + kReceptiveField && identity;
  report(6, "wavenet structure", ok,
         "perturbing position " + std::to_string(p) + " changes outputs " + std::to_string(lo) + ".." +
             std::to_string(hi) + " (expected +/-" + std::to_string(kReceptiveField) + "), zero-weight layers " +
             (identity ? "exact identity" : "NOT identity"),
         since(t0), 60);
}

// ---- 5: training sanity -------------------------------------------------------------

// Label 1 iff the clause mentions the predicate of the conjecture.
std::vector<data::TrainingExample> toy_examples() {
  test::Gen g(77);
  const std::vector<std::pair<std::string, std::string>> conjectures{{"~p(a)", "p("}, {"~q(a,b)", "q("}};
  std::vector<data::TrainingExample> out;
  std::size_t per_label[2] = {0, 0};
  while (out.size() < kToyExamples) {
    const auto& [conj, needle] = conjectures[g.below(conjectures.size())];
    data::TrainingExample e;
    e.clause_text = test::random_clause_text(g);
    e.conjecture = {conj};
    e.label = e.clause_text.find(needle) != std::string::npos ? 1 : 0;
    if (per_label[e.label] >= kToyExamples / 2) continue;
    ++per_label[e.label];
    e.clause_id = static_cast<std::uint32_t>(out.size());
    e.conjecture_key = conj;
    out.push_back(std::move(e));
  }
  return out;
}

Trained training_sanity() {
  const auto t0 = Clock::now();
  Trained t;

  const fol::Vocabulary toy_vocab = test::generator_vocabulary();
  nn::ModelConfig tc;
  tc.arch = nn::Architecture::Cnn;
  tc.vocab_size = static_cast<std::uint32_t>(toy_vocab.size());
  tc.dim = 32;
  tc.hidden = 64;
  tc.vocab_hash = toy_vocab.hash();
  const auto toy = data::encode_examples(toy_examples(), toy_vocab, tc);
  nn::TrainConfig cfg;
  cfg.steps = kTrainSteps;
  cfg.adam.lr = 1e-3;
  const nn::TrainResult toy_result = nn::train(toy, toy, nn::Model(tc, 1), cfg);
  const double toy_acc = nn::accuracy(toy_result.best, toy);

  t.corpus = harness::generate_corpus();
  for (const auto& c : t.corpus) t.problems.push_back(harness::parse(c));
  const auto traces = data::generate_traces(t.problems, trace_options());
  const data::Dataset ds = data::build_dataset(traces);
  const nn::ModelConfig mc = corpus_model_config(ds.vocab);
  const auto train_set = data::encode_examples(ds.train, ds.vocab, mc);
  const auto eval_set = data::encode_examples(ds.eval, ds.vocab, mc);
  const nn::TrainResult corpus_result = nn::train(train_set, eval_set, nn::Model(mc, 1), cfg);
  const double held_out = harness::accuracy_eval(corpus_result.best, eval_set);
  t.vocab = std::make_shared<fol::Vocabulary>(ds.vocab);
  t.model = std::make_shared<nn::Model>(corpus_result.best);
  t.seconds = since(t0);
  t.ok = toy_acc >= kToyAccuracy && held_out >= kCorpusAccuracy;

  std::size_t proved = 0;
  for (const auto& tr : traces) proved += tr.status == sat::ProveStatus::Unsatisfiable;
  report(5, "training sanity", t.ok,
         "toy train accuracy " + fmt(toy_acc) + " (>= " + fmt(kToyAccuracy) + ", " + std::to_string(toy.size()) +
             " examples, dim 32, best step " + std::to_string(toy_result.best_step) + "); corpus held-out balanced accuracy " +
             fmt(held_out) + " (>= " + fmt(kCorpusAccuracy) + ", " + std::to_string(eval_set.size()) + " eval / " +
             std::to_string(train_set.size()) + " train examples from " + std::to_string(proved) + "/" +
             std::to_string(traces.size()) + " proved traces, " + std::to_string(ds.split.eval.size()) +
             " held-out conjectures)",
         t.seconds, 900);
  return t;
}

// ---- 1 and 7: corpus run ---------------------------------------------------------------

std::vector<harness::Method> mode_methods(const Trained& t) {
  std::vector<harness::Method> methods;
  for (guide::Mode m : {guide::Mode::Auto, guide::Mode::PureNN, guide::Mode::Hybrid, guide::Mode::Switched}) {
    harness::Method method;
    method.id = std::string(guide::mode_name(m));
    method.guidance.mode = m;
    if (m != guide::Mode::Auto) method.guidance.scorer = scorer(t);
    methods.push_back(std::move(method));
  }
  return methods;
}

harness::RunOptions corpus_run_options() {
  harness::RunOptions o;
  o.budget = {guide::BudgetUnit::ProcessedClauses, kCorpusBudget};
  o.max_generated = kCorpusGenerated;
  o.max_wall_ms.reset();
  return o;
}

void corpus_criteria(const Trained& t, const fs::path& out) {
  const auto t0 = Clock::now();
  const auto methods = mode_methods(t);
  const harness::ExperimentReport r = harness::run_corpus(t.corpus, methods, corpus_run_options());
  const double run_seconds = since(t0);

  std::size_t proofs = 0, verified = 0, errors = 0, missing = 0;
  for (const auto& rec : r.records) {
    errors += rec.status == "Error";
    if (rec.proved() && !rec.verified) ++missing;
    if (rec.verified) {
      ++proofs;
      verified += *rec.verified;
    }
  }
  const bool sound = proofs == verified && errors == 0 && missing == 0 && !t.corpus.empty();
  report(1, "soundness suite", sound,
         std::to_string(verified) + "/" + std::to_string(proofs) + " proofs verified over " +
             std::to_string(t.corpus.size()) + " problems x " + std::to_string(methods.size()) + " modes, " +
             std::to_string(errors) + " errors",
         run_seconds, 600);

  std::map<std::string, const harness::MethodSummary*> by;
  for (const auto& s : r.summaries) by[s.method] = &s;
  auto count = [&](const std::string& m, std::uint64_t bucket) { return by.at(m)->proved.at(bucket); };
  for (const auto& s : r.summaries) {
    std::ostringstream line;
    line << s.method << ":";
    for (const auto& [bucket, n] : s.proved) line << " PC<=" << (bucket ? std::to_string(bucket) : "inf") << " " << n;
    note(line.str());
  }
  const std::size_t sw = count("switched", harness::kUnbounded), pure = count("pure", harness::kUnbounded);
  const std::size_t hyb = count("hybrid", 1000), aut = count("auto", 1000);
  report(7, "guidance effect", sw >= pure && hyb >= aut && sound,
         "switched " + std::to_string(sw) + " >= pure " + std::to_string(pure) + "; hybrid " + std::to_string(hyb) +
             " >= auto " + std::to_string(aut) + " at PC<=1000 (budget " + std::to_string(kCorpusBudget) +
             " processed, gen cap " + std::to_string(kCorpusGenerated) + "; runtime includes criterion 5 training)",
         run_seconds + t.seconds, 1800);

  std::error_code ec;
  fs::create_directories(out, ec);
  std::ofstream rep(out / "corpus_report.jsonl");
  harness::write_report(rep, r);
  std::ofstream tim(out / "corpus_timings.tsv");
  harness::write_timings(tim, r);
  harness::emit_curves(r, out / "curves", 10000);
  if (!harness::check_report(r).empty()) note("report aggregates disagree with records");
}

// ---- 8: switched contracts -------------------------------------------------------------

void switched_contracts(const Trained& t) {
  const auto t0 = Clock::now();
  // Every stride-th problem of the name-sorted corpus.
  std::vector<const fol::Problem*> fixed;
  const std::size_t stride = std::max<std::size_t>(1, t.problems.size() / kSwitchedProblems);
  for (std::size_t i = stride / 2; i < t.problems.size() && fixed.size() < kSwitchedProblems; i += stride)
    fixed.push_back(&t.problems[i]);

  auto config = [&](guide::Mode mode) {
    guide::GuidanceConfig c;
    c.mode = mode;
    if (mode != guide::Mode::Auto) c.scorer = scorer(t);
    c.total_budget = {guide::BudgetUnit::ProcessedClauses, kSwitchedTotal};
    c.limits.max_generated = 100000;
    return c;
  };
  std::size_t after = 0, over = 0, inexact = 0, switched = 0, same_as_auto = 0;
  for (const fol::Problem* p : fixed) {
    guide::GuidanceConfig sc = config(guide::Mode::Switched);
    sc.phase1_budget = guide::Budget{guide::BudgetUnit::ProcessedClauses, kSwitchedPhase1};
    const guide::GuidedResult r = guide::switched_prove(*p, sc);
    after += r.evaluations_after_switch;
    over += r.phase1_processed > kSwitchedPhase1;
    if (r.switched) {
      ++switched;
      inexact += r.phase1_processed != kSwitchedPhase1;
    }
    sc.phase1_budget = guide::Budget{guide::BudgetUnit::ProcessedClauses, 0};
    const guide::GuidedResult zero = guide::switched_prove(*p, sc);
    const guide::GuidedResult a = guide::guided_prove(*p, config(guide::Mode::Auto));
    same_as_auto += zero.selections == a.selections && zero.result.status == a.result.status;
  }
  const bool ok = fixed.size() == kSwitchedProblems && after == 0 && over == 0 && inexact == 0 &&
                  same_as_auto == fixed.size() && switched > 0;
  report(8, "switched-mode contracts", ok,
         std::to_string(after) + " evaluations after the switch, " + std::to_string(over) + " phase-1 overruns, " +
             std::to_string(switched) + "/" + std::to_string(fixed.size()) + " switched at exactly " +
             std::to_string(kSwitchedPhase1) + " (" + std::to_string(inexact) + " off), phase1=0 matches auto on " +
             std::to_string(same_as_auto) + "/" + std::to_string(fixed.size()),
         since(t0), 120);
}

// ---- 9: premise cascade -----------------------------------------------------------------

struct CascadeCounts {
  std::size_t full = 0, cascade = 0, unverified = 0, errors = 0;
};

CascadeCounts cascade_counts(const std::vector<harness::CorpusProblem>& problems, const Trained& t,
                             std::uint64_t budget) {
  std::vector<harness::Method> methods(2);
  methods[0].id = "full";
  methods[1].id = "cascade";
  methods[1].cascade_levels = kCascadeLevels;
  methods[1].premise_scorer = premsel::model_scorer(scorer(t));
  harness::RunOptions o;
  o.budget = {guide::BudgetUnit::ProcessedClauses, budget};
  o.max_generated = 20000;
  o.max_wall_ms.reset();
  const harness::ExperimentReport r = harness::run_corpus(problems, methods, o);
  CascadeCounts c;
  for (const auto& rec : r.records) {
    c.errors += rec.status == "Error";
    if (rec.verified && !*rec.verified) ++c.unverified;
    if (!rec.proved()) continue;
    (rec.method == "full" ? c.full : c.cascade) += 1;
  }
  return c;
}

// `count` premises d<i>(X) => d<i>(f(X)); premise `essential` is goal(a).
fol::Problem toy_premises(std::size_t count, std::optional<std::size_t> essential) {
  std::string text;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string name = "d" + std::to_string(i);
    if (essential && i == *essential)
      text += "fof(" + name + ", axiom, goal(a)).\n";
    else
      text += "fof(" + name + ", axiom, ![X]: (" + name + "(X) => " + name + "(f(X)))).\n";
  }
  text += "fof(g, conjecture, goal(a)).\n";
  return fol::parse_tptp(text);
}

// Scores by input position, except that `promote` lands at rank `rank`.
premsel::PremiseScorer rigged(std::size_t promote, std::size_t rank) {
  return [=](const fol::Problem&, const premsel::Premise& premise) {
    const std::size_t i = std::stoul(premise.name.substr(1));
    if (i == promote) return 1.0 - (static_cast<double>(rank) - 0.5) / 1000.0;
    return 1.0 - static_cast<double>(i + (i > promote ? 0 : 1)) / 1000.0;
  };
}

std::vector<std::size_t> attempted(const fol::Problem& p, std::size_t essential, std::size_t rank,
                                   std::optional<std::size_t>& proved_level) {
  premsel::CascadeConfig c;
  c.guidance.total_budget = {guide::BudgetUnit::ProcessedClauses, 400};
  c.guidance.limits.max_generated = 20000;
  const premsel::CascadeResult r = premsel::cascade_prove(p, premsel::rank_premises(p, rigged(essential, rank)), c);
  std::vector<std::size_t> levels;
  for (const auto& l : r.transcript) levels.push_back(l.level);
  proved_level = r.proved_level;
  return levels;
}

void premise_cascade(const Trained& t) {
  const auto t0 = Clock::now();
  std::vector<harness::CorpusProblem> training_family;
  for (const auto& c : t.corpus)
    if (c.family == "distractor") training_family.push_back(c);
  harness::CorpusOptions held_options;
  held_options.seed = kHeldOutSeed;
  const auto held_out = harness::generate_distractor_problems(held_options, "heldout");

  // The budget is chosen on the training family only: the largest grid value
  // at which the cascade proves more there.
  std::optional<std::uint64_t> chosen;
  std::ostringstream sweep;
  for (std::uint64_t b : kCascadeBudgets) {
    const CascadeCounts c = cascade_counts(training_family, t, b);
    sweep << " " << b << ":" << c.cascade << "/" << c.full;
    if (c.cascade > c.full) chosen = b;
  }
  note("training-family sweep (budget:cascade/full):" + sweep.str());

  CascadeCounts held;
  if (chosen) held = cascade_counts(held_out, t, *chosen);

  std::ostringstream info;
  for (std::uint64_t b : kCascadeBudgets) {
    const CascadeCounts c = cascade_counts(held_out, t, b);
    info << " " << b << ":" << c.cascade << "/" << c.full;
  }
  note("held-out sweep, informational only (budget:cascade/full):" + info.str());

  std::optional<std::size_t> lvl10, lvl32, lvl64, lvl40;
  const auto ten = attempted(toy_premises(10, 4), 4, 10, lvl10);
  const auto stop = attempted(toy_premises(300, 50), 50, 1, lvl32);
  const auto rank33 = attempted(toy_premises(70, 12), 12, 33, lvl64);
  const auto clamp40 = attempted(toy_premises(40, 12), 12, 33, lvl40);
  const bool protocol = ten == std::vector<std::size_t>{10} && lvl10 == 10u &&
                        stop == std::vector<std::size_t>{32} && lvl32 == 32u &&
                        rank33 == std::vector<std::size_t>{32, 64} && lvl64 == 64u &&
                        clamp40 == std::vector<std::size_t>{32, 40} && lvl40 == 40u &&
                        premsel::effective_levels(kCascadeLevels, 210) == std::vector<std::size_t>{32, 64, 128, 210};

  const bool ok = chosen && held_out.size() >= kHeldOutMin && held.cascade > held.full && held.unverified == 0 &&
                  held.errors == 0 && protocol;
  report(9, "premise cascade", ok,
         "held-out " + std::to_string(held_out.size()) + " problems at budget " +
             (chosen ? std::to_string(*chosen) : std::string("none")) + ": cascade " + std::to_string(held.cascade) +
             " > full " + std::to_string(held.full) + ", " + std::to_string(held.unverified) +
             " unverified; stop rule and clamping " + (protocol ? "as specified" : "WRONG"),
         since(t0), 1200);
}

// ---- 10: determinism and serialization ---------------------------------------------------

void determinism(const Trained& t) {
  const auto t0 = Clock::now();
  auto traces_text = [&] {
    std::ostringstream s;
    data::write_traces(s, data::generate_traces(t.problems, trace_options()));
    return s.str();
  };
  const std::string tr1 = traces_text(), tr2 = traces_text();
  std::istringstream in(tr1);
  const auto traces = data::read_traces(in);
  const std::string v1 = data::build_dataset(traces).vocab.serialize();
  const std::string v2 = data::build_dataset(traces).vocab.serialize();

  std::vector<harness::CorpusProblem> subset;
  std::map<std::string, std::size_t> per_family;
  for (const auto& c : t.corpus)
    if (per_family[c.family]++ < 3) subset.push_back(c);
  auto methods = mode_methods(t);
  harness::RunOptions o = corpus_run_options();
  o.budget.amount = 300;
  auto report_text = [&] {
    std::ostringstream s;
    harness::write_report(s, harness::run_corpus(subset, methods, o));
    return s.str();
  };
  const std::string r1 = report_text(), r2 = report_text();

  const std::string c1 = nn::save_checkpoint(*t.model);
  const nn::Model loaded = nn::load_checkpoint(c1, t.vocab->hash());
  const std::string c2 = nn::save_checkpoint(loaded);

  test::Gen g(99);
  std::vector<data::TrainingExample> inputs;
  for (std::size_t i = 0; i < kScoreInputs; ++i) {
    data::TrainingExample e;
    e.clause_text = test::random_clause_text(g);
    e.conjecture = {test::random_clause_text(g)};
    inputs.push_back(std::move(e));
  }
  const auto encoded = data::encode_examples(inputs, *t.vocab, t.model->config());
  const auto s1 = nn::predict(*t.model, encoded);
  const auto s2 = nn::predict(loaded, encoded);
  const bool scores = s1.size() == kScoreInputs && s2.size() == kScoreInputs &&
                      std::memcmp(s1.data(), s2.data(), s1.size() * sizeof(double)) == 0;

  const bool ok = tr1 == tr2 && !tr1.empty() && v1 == v2 && r1 == r2 && c1 == c2 && scores;
  auto same = [](bool b) { return std::string(b ? "identical" : "DIFFERENT"); };
  report(10, "determinism and serialization", ok,
         "traces " + same(tr1 == tr2) + " (" + std::to_string(tr1.size()) + " bytes), vocabulary " + same(v1 == v2) +
             ", report " + same(r1 == r2) + " (" + std::to_string(subset.size()) + " problems x 4 modes), checkpoint " +
             same(c1 == c2) + " (" + std::to_string(c1.size()) + " bytes), " + std::to_string(kScoreInputs) +
             " scores " + (scores ? "bit-exact" : "DIFFER"),
         since(t0), 120);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs every acceptance criterion and prints one PASS/FAIL line each."};
  std::string out = "acceptance_out";
  std::set<int> only;
  app.add_option("--out", out, "Directory for the corpus report, timings and curves");
  app.add_option("--only", only, "Run only these criteria (criterion 5 runs whenever a later one needs its model)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  auto want = [&](std::initializer_list<int> ids) {
    if (only.empty()) return true;
    for (int id : ids)
      if (only.contains(id)) return true;
    return false;
  };

  const auto t0 = Clock::now();
  if (want({3})) round_robin();
  if (want({2})) oracle_equivalence();
  if (want({4})) gradient_checks();
  if (want({6})) wavenet_structure();
  if (want({1, 5, 7, 8, 9, 10})) {
    const Trained t = training_sanity();
    if (want({1, 7})) corpus_criteria(t, out);
    if (want({8})) switched_contracts(t);
    if (want({9})) premise_cascade(t);
    if (want({10})) determinism(t);
  }

  std::sort(outcomes.begin(), outcomes.end(), [](const Outcome& a, const Outcome& b) { return a.id < b.id; });
  const auto passed = std::count_if(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.ok; });
  std::cout << "summary: " << passed << "/" << outcomes.size() << " criteria passed";
  for (const Outcome& o : outcomes) std::cout << " " << o.id << (o.ok ? "=PASS" : "=FAIL");
  std::cout << std::fixed << std::setprecision(1) << " [" << since(t0) << " s total]" << std::endl;
  return passed == static_cast<long>(outcomes.size()) ? 0 : 1;
}
