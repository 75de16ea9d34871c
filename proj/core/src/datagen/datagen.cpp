#include "nnsel/datagen/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <random>

#include "json.hpp"
#include "nnsel/error.hpp"
#include "nnsel/fol/print.hpp"
#include "nnsel/fol/tokenize.hpp"
#include "nnsel/fol/tptp.hpp"
#include "nnsel/neural/encode.hpp"

namespace nnsel::data {

using nlohmann::json;

namespace {

fol::ClauseRole parse_role(const std::string& s) {
  for (auto r : {fol::ClauseRole::Axiom, fol::ClauseRole::NegatedConjecture, fol::ClauseRole::Derived})
    if (s == fol::role_name(r)) return r;
  throw Error("unknown clause role: " + s);
}

sat::ProveStatus parse_status(const std::string& s) {
  for (auto st : {sat::ProveStatus::Unsatisfiable, sat::ProveStatus::Satisfiable, sat::ProveStatus::ResourceOut})
    if (s == sat::status_name(st)) return st;
  throw Error("unknown status: " + s);
}

NegativeKind parse_negative_kind(const std::string& s) {
  for (auto k : {NegativeKind::None, NegativeKind::ProcessedUnused, NegativeKind::SampledUnprocessed})
    if (s == negative_kind_name(k)) return k;
  throw Error("unknown negative kind: " + s);
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Uniform sample of k indices out of n, returned in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(k, n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::string config_hash(const sat::SearchConfig& config) {
  std::string desc = config.schedule.to_string();
  desc += "|p=" + (config.limits.max_processed ? std::to_string(*config.limits.max_processed) : "-");
  desc += "|g=" + std::to_string(config.limits.max_generated);
  desc += "|w=" + (config.limits.max_wall_ms ? std::to_string(*config.limits.max_wall_ms) : "-");
  desc += "|m=" + (config.limits.max_memory_bytes ? std::to_string(*config.limits.max_memory_bytes) : "-");
  desc += config.equality_axioms ? "|eq" : "|noeq";
  return hex(fol::fnv1a(desc));
}

ProofTrace generate_trace(const fol::Problem& problem, const TraceOptions& options) {
  ProofTrace trace;
  trace.problem = problem.name;
  trace.config_hash = config_hash(options.baseline);
  for (const fol::Clause& c : problem.negated_conjecture) trace.conjecture.push_back(fol::to_string(problem.signature, c));
  for (std::size_t i = 0; i < trace.conjecture.size(); ++i)
    trace.conjecture_key += (i ? " & " : "") + trace.conjecture[i];

  sat::Saturation sat(problem, options.baseline.equality_axioms);
  sat.attach(heur::instantiate(options.baseline.schedule, problem, options.baseline.neural));
  sat::ProveResult r = sat.run(options.baseline.limits);
  trace.status = r.status;
  trace.processed_count = r.processed_count;
  if (r.status != sat::ProveStatus::Unsatisfiable) return trace;

  const auto& used = r.proof->used_ids;
  for (fol::ClauseId id : sat.processed()) {
    const fol::Clause& c = sat.clause(id);
    trace.clauses.push_back({fol::index(id), fol::to_string(problem.signature, c), c.role, true, used.contains(id)});
  }
  std::vector<fol::ClauseId> live = sat.schedule().live_ids();
  std::mt19937_64 rng(options.seed);
  for (std::size_t i : sample_indices(live.size(), options.unprocessed_sample, rng)) {
    const fol::Clause& c = sat.clause(live[i]);
    trace.clauses.push_back({fol::index(c.id), fol::to_string(problem.signature, c), c.role, false, false});
  }
  return trace;
}

std::vector<ProofTrace> generate_traces(std::span<const fol::Problem> corpus, const TraceOptions& options) {
  std::vector<ProofTrace> out;
  out.reserve(corpus.size());
  for (const fol::Problem& p : corpus) {
    try {
      out.push_back(generate_trace(p, options));
    } catch (const Error&) {
      ProofTrace failed;
      failed.problem = p.name;
      failed.config_hash = config_hash(options.baseline);
      out.push_back(std::move(failed));
    }
  }
  return out;
}

void write_traces(std::ostream& out, std::span<const ProofTrace> traces) {
  for (const ProofTrace& t : traces) {
    json h = {{"type", "trace"},
              {"problem", t.problem},
              {"status", sat::status_name(t.status)},
              {"config_hash", t.config_hash},
              {"processed_count", t.processed_count},
              {"conjecture_key", t.conjecture_key},
              {"conjecture", t.conjecture}};
    out << h.dump() << '\n';
    for (const TraceClause& c : t.clauses) {
      json j = {{"type", "clause"},         {"id", c.id},
                {"text", c.text},           {"role", fol::role_name(c.role)},
                {"processed", c.processed}, {"used", c.used}};
      out << j.dump() << '\n';
    }
  }
}

std::vector<ProofTrace> read_traces(std::istream& in) {
  std::vector<ProofTrace> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    const std::string type = j.at("type");
    if (type == "trace") {
      ProofTrace t;
      t.problem = j.at("problem");
      t.status = parse_status(j.at("status"));
      t.config_hash = j.at("config_hash");
      t.processed_count = j.at("processed_count");
      t.conjecture_key = j.at("conjecture_key");
      t.conjecture = j.at("conjecture").get<std::vector<std::string>>();
      out.push_back(std::move(t));
    } else if (type == "clause") {
      if (out.empty()) throw Error("clause record before any trace header");
      TraceClause c;
      c.id = j.at("id");
      c.text = j.at("text");
      c.role = parse_role(j.at("role"));
      c.processed = j.at("processed");
      c.used = j.at("used");
      out.back().clauses.push_back(std::move(c));
    } else {
      throw Error("unknown trace record type: " + type);
    }
  }
  return out;
}

std::string_view negative_kind_name(NegativeKind k) {
  switch (k) {
    case NegativeKind::None: return "none";
    case NegativeKind::ProcessedUnused: return "processed_unused";
    case NegativeKind::SampledUnprocessed: return "sampled_unprocessed";
  }
  return "none";
}

std::vector<TrainingExample> label_examples(const ProofTrace& trace, bool star_mode, double star_ratio,
                                            std::uint64_t seed) {
  std::vector<TrainingExample> out;
  if (trace.status != sat::ProveStatus::Unsatisfiable) return out;
  auto make = [&](const TraceClause& c, int label, NegativeKind kind) {
    TrainingExample e;
    e.problem = trace.problem;
    e.conjecture_key = trace.conjecture_key;
    e.clause_id = c.id;
    e.label = label;
    e.negative_kind = kind;
    e.clause_text = c.text;
    e.conjecture = trace.conjecture;
    return e;
  };
  std::size_t negatives = 0, positives = 0;
  std::vector<const TraceClause*> unprocessed;
  for (const TraceClause& c : trace.clauses) {
    if (!c.processed) {
      unprocessed.push_back(&c);
    } else if (c.used) {
      out.push_back(make(c, 1, NegativeKind::None));
      ++positives;
    } else {
      out.push_back(make(c, 0, NegativeKind::ProcessedUnused));
      ++negatives;
    }
  }
  if (star_mode) {
    // A proof that used every processed clause falls back to the positive count.
    const std::size_t base = negatives > 0 ? negatives : positives;
    const auto want = static_cast<std::size_t>(std::floor(star_ratio * static_cast<double>(base)));
    std::mt19937_64 rng(seed);
    for (std::size_t i : sample_indices(unprocessed.size(), want, rng))
      out.push_back(make(*unprocessed[i], 0, NegativeKind::SampledUnprocessed));
  }
  return out;
}

DatasetSplit split_by_conjecture(std::span<const TrainingExample> examples, double fraction, std::uint64_t seed) {
  std::set<std::string> keys;
  for (const TrainingExample& e : examples) keys.insert(e.conjecture_key);
  std::vector<std::string> order(keys.begin(), keys.end());
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(order.size())));
  DatasetSplit split;
  for (std::size_t i = 0; i < order.size(); ++i) (i < n_train ? split.train : split.eval).insert(order[i]);
  return split;
}

std::vector<TrainingExample> select(std::span<const TrainingExample> examples, const std::set<std::string>& keys) {
  std::vector<TrainingExample> out;
  for (const TrainingExample& e : examples)
    if (keys.contains(e.conjecture_key)) out.push_back(e);
  return out;
}

std::vector<std::string> clause_text_tokens(const std::string& text) {
  fol::Signature sig;
  return fol::clause_tokens(sig, fol::parse_clause(text, sig));
}

fol::Vocabulary build_vocabulary(std::span<const TrainingExample> train) {
  std::map<std::string, std::uint64_t> counts;
  std::map<std::string, std::vector<std::string>> memo;
  auto count = [&](const std::string& text) {
    auto it = memo.find(text);
    if (it == memo.end()) it = memo.emplace(text, clause_text_tokens(text)).first;
    for (const std::string& t : it->second) ++counts[t];
  };
  for (const TrainingExample& e : train) {
    count(e.clause_text);
    for (const std::string& c : e.conjecture) count(c);
  }
  return fol::Vocabulary::from_counts(counts);
}

std::vector<TrainingExample> balance_eval_set(std::span<const TrainingExample> examples, std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < examples.size(); ++i) (examples[i].label == 1 ? pos : neg).push_back(i);
  if (pos.empty() || neg.empty()) throw Error("cannot balance: one class is empty");
  std::vector<std::size_t>& major = pos.size() > neg.size() ? pos : neg;
  const std::size_t keep = std::min(pos.size(), neg.size());
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> kept;
  for (std::size_t i : sample_indices(major.size(), keep, rng)) kept.push_back(major[i]);
  major = std::move(kept);
  std::vector<std::size_t> all = pos;
  all.insert(all.end(), neg.begin(), neg.end());
  std::sort(all.begin(), all.end());
  std::vector<TrainingExample> out;
  out.reserve(all.size());
  for (std::size_t i : all) out.push_back(examples[i]);
  return out;
}

void write_examples(std::ostream& out, std::span<const TrainingExample> examples, const fol::Vocabulary& vocab,
                    std::size_t max_len) {
  for (const TrainingExample& e : examples) {
    std::vector<std::string> conj_tokens;
    for (std::size_t i = 0; i < e.conjecture.size(); ++i) {
      if (i) conj_tokens.emplace_back(fol::Vocabulary::kSepToken);
      auto t = clause_text_tokens(e.conjecture[i]);
      conj_tokens.insert(conj_tokens.end(), t.begin(), t.end());
    }
    auto ctoks = clause_text_tokens(e.clause_text);
    json j = {{"label", e.label},
              {"clause_text", e.clause_text},
              {"clause_tokens", fol::tokenize_tokens(ctoks, vocab, max_len).tokens},
              {"conjecture", e.conjecture},
              {"conjecture_tokens", fol::tokenize_tokens(conj_tokens, vocab, max_len).tokens},
              {"problem", e.problem},
              {"conjecture_key", e.conjecture_key},
              {"clause_id", e.clause_id},
              {"negative_kind", negative_kind_name(e.negative_kind)}};
    out << j.dump() << '\n';
  }
}

std::vector<TrainingExample> read_examples(std::istream& in) {
  std::vector<TrainingExample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    TrainingExample e;
    e.label = j.at("label");
    e.clause_text = j.at("clause_text");
    e.conjecture = j.at("conjecture").get<std::vector<std::string>>();
    e.problem = j.at("problem");
    e.conjecture_key = j.at("conjecture_key");
    e.clause_id = j.at("clause_id");
    e.negative_kind = parse_negative_kind(j.at("negative_kind"));
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<nn::Example> encode_examples(std::span<const TrainingExample> examples, const fol::Vocabulary& vocab,
                                         const nn::ModelConfig& config) {
  std::vector<nn::Example> out;
  out.reserve(examples.size());
  std::map<std::vector<std::string>, nn::ModelInput> conjectures;
  for (const TrainingExample& e : examples) {
    fol::Signature sig;
    nn::Example ex;
    ex.clause = nn::encode_clause(sig, fol::parse_clause(e.clause_text, sig), vocab, config);
    auto it = conjectures.find(e.conjecture);
    if (it == conjectures.end()) {
      std::vector<fol::Clause> clauses;
      for (const std::string& text : e.conjecture) {
        fol::Clause c;
        c.literals = fol::parse_clause(text, sig);
        clauses.push_back(std::move(c));
      }
      it = conjectures.emplace(e.conjecture, nn::encode_conjecture(sig, clauses, vocab, config)).first;
    }
    ex.conjecture = it->second;
    ex.label = e.label;
    out.push_back(std::move(ex));
  }
  return out;
}

Dataset build_dataset(std::span<const ProofTrace> traces, const DatasetOptions& options) {
  std::vector<TrainingExample> all;
  for (const ProofTrace& t : traces) {
    std::vector<TrainingExample> e = label_examples(t, options.star_mode, options.star_ratio, options.seed);
    all.insert(all.end(), std::make_move_iterator(e.begin()), std::make_move_iterator(e.end()));
  }
  Dataset out;
  out.split = split_by_conjecture(all, options.train_fraction, options.seed);
  out.train = select(all, out.split.train);
  out.vocab = build_vocabulary(out.train);
  if (options.balance_train) out.train = balance_eval_set(out.train, options.seed);
  out.eval = balance_eval_set(select(all, out.split.eval), options.seed);
  return out;
}

}  // namespace nnsel::data
