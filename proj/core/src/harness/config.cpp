#include "nnsel/harness/config.hpp"

#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nnsel/error.hpp"
#include "nnsel/neural/checkpoint.hpp"

namespace nnsel::harness {

using nlohmann::json;

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : j.items())
    if (!known.contains(k)) throw Error("unknown key '" + k + "' in " + where);
}

heur::ScheduleSpec schedule_named(const std::string& name) {
  if (name == "auto208") return heur::auto208_spec();
  if (name == "auto200") return heur::auto200_spec();
  return heur::ScheduleSpec::parse(name);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("experiment config: ") + e.what());
  }
  reject_unknown(j,
                 {"corpus_dir", "corpus", "families", "budget_unit", "budget", "max_generated", "max_wall_ms", "workers",
                  "batch_size", "checkpoint", "vocab", "methods"},
                 "experiment config");
  ExperimentConfig c;
  try {
    take(j, "corpus_dir", c.corpus_dir);
    if (j.contains("corpus")) {
      const json& k = j.at("corpus");
      reject_unknown(k, {"seed", "distractor_problems", "distractors_per_problem"}, "corpus");
      take(k, "seed", c.corpus.seed);
      take(k, "distractor_problems", c.corpus.distractor_problems);
      take(k, "distractors_per_problem", c.corpus.distractors_per_problem);
    }
    take(j, "families", c.families);
    take(j, "budget_unit", c.budget_unit);
    take(j, "budget", c.budget);
    take(j, "max_generated", c.max_generated);
    take(j, "max_wall_ms", c.max_wall_ms);
    take(j, "workers", c.workers);
    take(j, "batch_size", c.batch_size);
    take(j, "checkpoint", c.checkpoint);
    take(j, "vocab", c.vocab);
    if (j.contains("methods")) {
      for (const json& m : j.at("methods")) {
        reject_unknown(m,
                       {"id", "mode", "auto_schedule", "nn_picks", "auto_cycle_picks", "phase1", "cascade_levels",
                        "checkpoint", "vocab"},
                       "method");
        MethodSpec s;
        take(m, "id", s.id);
        std::string mode = "auto";
        take(m, "mode", mode);
        s.mode = guide::parse_mode(mode);
        if (s.id.empty()) s.id = mode;
        take(m, "auto_schedule", s.auto_schedule);
        take(m, "nn_picks", s.nn_picks);
        take(m, "auto_cycle_picks", s.auto_cycle_picks);
        if (m.contains("phase1") && !m.at("phase1").is_null()) s.phase1 = m.at("phase1").get<std::uint64_t>();
        if (m.contains("cascade_levels") && !m.at("cascade_levels").is_null())
          s.cascade_levels = m.at("cascade_levels").get<std::vector<std::size_t>>();
        take(m, "checkpoint", s.checkpoint);
        take(m, "vocab", s.vocab);
        c.methods.push_back(std::move(s));
      }
    }
  } catch (const json::exception& e) {
    throw Error(std::string("experiment config: ") + e.what());
  }
  if (c.budget_unit != "processed" && c.budget_unit != "wall_ms")
    throw Error("budget_unit must be processed or wall_ms");
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  return parse_experiment_config(read_file(path));
}

std::string to_json(const ExperimentConfig& c) {
  json methods = json::array();
  for (const MethodSpec& m : c.methods) {
    methods.push_back({{"id", m.id},
                       {"mode", guide::mode_name(m.mode)},
                       {"auto_schedule", m.auto_schedule},
                       {"nn_picks", m.nn_picks},
                       {"auto_cycle_picks", m.auto_cycle_picks},
                       {"phase1", m.phase1 ? json(*m.phase1) : json(nullptr)},
                       {"cascade_levels", m.cascade_levels ? json(*m.cascade_levels) : json(nullptr)},
                       {"checkpoint", m.checkpoint},
                       {"vocab", m.vocab}});
  }
  json j = {{"corpus_dir", c.corpus_dir},
            {"corpus",
             {{"seed", c.corpus.seed},
              {"distractor_problems", c.corpus.distractor_problems},
              {"distractors_per_problem", c.corpus.distractors_per_problem}}},
            {"families", c.families},
            {"budget_unit", c.budget_unit},
            {"budget", c.budget},
            {"max_generated", c.max_generated},
            {"max_wall_ms", c.max_wall_ms},
            {"workers", c.workers},
            {"batch_size", c.batch_size},
            {"checkpoint", c.checkpoint},
            {"vocab", c.vocab},
            {"methods", methods}};
  return j.dump();
}

RunOptions run_options(const ExperimentConfig& c) {
  RunOptions o;
  o.budget = {c.budget_unit == "wall_ms" ? guide::BudgetUnit::WallMs : guide::BudgetUnit::ProcessedClauses, c.budget};
  o.max_generated = c.max_generated;
  o.max_wall_ms = c.max_wall_ms == 0 ? std::nullopt : std::optional<std::uint64_t>(c.max_wall_ms);
  o.workers = c.workers;
  return o;
}

fol::Vocabulary load_vocabulary(const std::filesystem::path& path) { return fol::Vocabulary::parse(read_file(path)); }

void save_vocabulary(const fol::Vocabulary& vocab, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << vocab.serialize();
}

std::vector<Method> resolve_methods(const ExperimentConfig& c) {
  std::map<std::pair<std::string, std::string>, guide::Scorer> scorers;
  auto scorer_for = [&](const std::string& ckpt, const std::string& voc) -> guide::Scorer {
    if (ckpt.empty() || voc.empty()) throw Error("guided and cascade methods need a checkpoint and a vocabulary");
    auto key = std::make_pair(ckpt, voc);
    auto it = scorers.find(key);
    if (it != scorers.end()) return it->second;
    guide::Scorer s;
    auto vocab = std::make_shared<fol::Vocabulary>(load_vocabulary(voc));
    s.model = std::make_shared<nn::Model>(nn::load_checkpoint_file(ckpt, vocab->hash()));
    s.vocab = std::move(vocab);
    s.validate();
    scorers.emplace(key, s);
    return s;
  };
  const RunOptions options = run_options(c);
  std::vector<Method> out;
  for (const MethodSpec& spec : c.methods) {
    Method m;
    m.id = spec.id;
    m.guidance.mode = spec.mode;
    m.guidance.nn_picks = spec.nn_picks;
    m.guidance.auto_cycle_picks = spec.auto_cycle_picks;
    m.guidance.auto_schedule = schedule_named(spec.auto_schedule);
    m.guidance.batch_size = c.batch_size;
    if (spec.phase1) m.guidance.phase1_budget = guide::Budget{options.budget.unit, *spec.phase1};
    const std::string ckpt = spec.checkpoint.empty() ? c.checkpoint : spec.checkpoint;
    const std::string voc = spec.vocab.empty() ? c.vocab : spec.vocab;
    const bool neural = spec.mode != guide::Mode::Auto;
    if (neural || spec.cascade_levels) {
      guide::Scorer s = scorer_for(ckpt, voc);
      if (neural) m.guidance.scorer = s;
      if (spec.cascade_levels) {
        m.cascade_levels = spec.cascade_levels;
        m.premise_scorer = premsel::model_scorer(s);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<CorpusProblem> load_corpus(const ExperimentConfig& c) {
  std::vector<CorpusProblem> all = c.corpus_dir.empty() ? generate_corpus(c.corpus) : read_corpus(c.corpus_dir);
  if (c.families.empty()) return all;
  std::set<std::string> keep(c.families.begin(), c.families.end());
  std::vector<CorpusProblem> out;
  for (CorpusProblem& p : all)
    if (keep.contains(p.family)) out.push_back(std::move(p));
  return out;
}

}  // namespace nnsel::harness
