#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nnsel/datagen/datagen.hpp"
#include "nnsel/error.hpp"
#include "nnsel/fol/tptp.hpp"
#include "nnsel/guidance/guidance.hpp"
#include "nnsel/harness/config.hpp"
#include "nnsel/harness/corpus.hpp"
#include "nnsel/harness/experiment.hpp"
#include "nnsel/neural/checkpoint.hpp"
#include "nnsel/neural/training.hpp"
#include "nnsel/premsel/premsel.hpp"
#include "nnsel/saturation/proof.hpp"
#include "nnsel/saturation/prover.hpp"

using namespace nnsel;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

struct ModelFiles {
  std::string checkpoint;
  std::string vocab;

  void add(CLI::App* app) {
    app->add_option("--checkpoint", checkpoint, "Model checkpoint");
    app->add_option("--vocab", vocab, "Vocabulary file");
  }

  std::optional<guide::Scorer> scorer() const {
    if (checkpoint.empty() && vocab.empty()) return std::nullopt;
    if (checkpoint.empty() || vocab.empty()) throw Error("--checkpoint and --vocab go together");
    auto v = std::make_shared<fol::Vocabulary>(harness::load_vocabulary(vocab));
    auto m = std::make_shared<nn::Model>(nn::load_checkpoint_file(checkpoint, v->hash()));
    return guide::Scorer{m, v};
  }
};

struct SearchFlags {
  std::string mode = "auto";
  std::uint64_t budget = 20000;
  std::string unit = "processed";
  std::uint64_t max_generated = 1'000'000;
  std::optional<std::uint64_t> phase1;
  std::uint32_t nn_picks = 1;
  std::uint32_t auto_cycle_picks = 1;
  std::size_t batch_size = 64;

  void add(CLI::App* app) {
    app->add_option("--mode", mode, "auto, pure, hybrid or switched")->check(
        CLI::IsMember({"auto", "pure", "hybrid", "switched"}));
    app->add_option("--budget", budget, "Total budget");
    app->add_option("--budget-unit", unit, "processed or wall_ms")->check(CLI::IsMember({"processed", "wall_ms"}));
    app->add_option("--max-generated", max_generated, "Generated-clause cap");
    app->add_option("--phase1", phase1, "Switched phase-1 budget (default two thirds)");
    app->add_option("--nn-picks", nn_picks, "Hybrid neural picks per cycle");
    app->add_option("--auto-cycle-picks", auto_cycle_picks, "Hybrid scale of the auto entries");
    app->add_option("--batch-size", batch_size, "Network evaluation batch size");
  }

  guide::GuidanceConfig config(const std::optional<guide::Scorer>& scorer) const {
    guide::GuidanceConfig c;
    c.mode = guide::parse_mode(mode);
    const guide::BudgetUnit u = unit == "wall_ms" ? guide::BudgetUnit::WallMs : guide::BudgetUnit::ProcessedClauses;
    c.total_budget = {u, budget};
    if (phase1) c.phase1_budget = guide::Budget{u, *phase1};
    c.limits.max_generated = max_generated;
    c.nn_picks = nn_picks;
    c.auto_cycle_picks = auto_cycle_picks;
    c.batch_size = batch_size;
    if (scorer) c.scorer = *scorer;
    return c;
  }
};

void print_result(const guide::GuidedResult& r, const std::string& name) {
  std::cout << sat::szs_line(r.result, name) << "\n";
  std::cout << "% mode " << guide::mode_name(r.mode) << ", processed " << r.result.processed_count << ", generated "
            << r.result.generated_count << ", limit " << sat::limit_name(r.result.limit) << ", " << r.result.wall_ms
            << " ms, network evaluations " << r.network_evaluations;
  if (r.mode == guide::Mode::Switched)
    std::cout << ", switched " << (r.switched ? "yes" : "no") << " after " << r.phase1_processed;
  std::cout << "\n";
}

int cmd_prove(const std::string& file, const SearchFlags& flags, const ModelFiles& files, const std::string& proof_out) {
  const fol::Problem p = fol::load_tptp_file(file);
  const guide::GuidedResult r = guide::guided_prove(p, flags.config(files.scorer()));
  print_result(r, p.name);
  if (r.result.proof) {
    const sat::VerifyResult v = sat::verify_proof(*r.result.proof, p);
    std::cout << "% proof " << (v.ok ? "verified" : "REJECTED: " + v.reason) << ", " << r.result.proof->used_ids.size()
              << " clauses used\n";
    if (!proof_out.empty()) open_out(proof_out) << sat::dump_derivation(*r.result.proof, p.signature);
  }
  return 0;
}

std::vector<fol::Problem> corpus_problems(const std::string& dir, std::uint64_t seed) {
  std::vector<harness::CorpusProblem> c;
  if (dir.empty()) {
    harness::CorpusOptions o;
    o.seed = seed;
    c = harness::generate_corpus(o);
  } else {
    c = harness::read_corpus(dir);
  }
  std::vector<fol::Problem> out;
  for (const auto& cp : c) out.push_back(harness::parse(cp));
  return out;
}

struct DatasetFlags {
  std::string traces;
  bool star = false;
  double star_ratio = 1.0;
  double train_fraction = 0.9;
  std::uint64_t seed = 1;

  void add(CLI::App* app) {
    app->add_option("--traces", traces, "Trace file written by `trace`")->required();
    app->add_flag("--star", star, "Add sampled unprocessed negatives");
    app->add_option("--star-ratio", star_ratio, "Sampled negatives per negative");
    app->add_option("--train-fraction", train_fraction, "Conjecture-level train fraction");
    app->add_option("--split-seed", seed, "Split and balancing seed");
  }

  data::Dataset build() const {
    std::ifstream in(traces);
    if (!in) throw Error("cannot open " + traces);
    const auto t = data::read_traces(in);
    data::DatasetOptions o;
    o.star_mode = star;
    o.star_ratio = star_ratio;
    o.train_fraction = train_fraction;
    o.seed = seed;
    return data::build_dataset(t, o);
  }
};

int cmd_trace(const std::string& dir, std::uint64_t corpus_seed, std::uint64_t max_processed,
              std::uint64_t max_generated, const std::string& out) {
  data::TraceOptions o;
  o.baseline.limits.max_processed = max_processed;
  o.baseline.limits.max_generated = max_generated;
  const auto problems = corpus_problems(dir, corpus_seed);
  const auto traces = data::generate_traces(problems, o);
  std::size_t proved = 0;
  for (const auto& t : traces) proved += t.status == sat::ProveStatus::Unsatisfiable;
  std::ofstream f = open_out(out);
  data::write_traces(f, traces);
  std::cout << traces.size() << " traces, " << proved << " proved, written to " << out << "\n";
  return 0;
}

int cmd_train(const DatasetFlags& ds_flags, nn::ModelConfig mc, nn::TrainConfig tc, const std::string& checkpoint,
              const std::string& vocab_out, const std::string& metrics, std::uint64_t init_seed) {
  const data::Dataset ds = ds_flags.build();
  mc.vocab_size = static_cast<std::uint32_t>(ds.vocab.size());
  mc.vocab_hash = ds.vocab.hash();
  const auto train_set = data::encode_examples(ds.train, ds.vocab, mc);
  const auto eval_set = data::encode_examples(ds.eval, ds.vocab, mc);
  std::optional<std::ofstream> m;
  if (!metrics.empty()) m = open_out(metrics);
  const nn::TrainResult r = nn::train(train_set, eval_set, nn::Model(mc, init_seed), tc, m ? &*m : nullptr);
  nn::save_checkpoint_file(r.best, checkpoint);
  harness::save_vocabulary(ds.vocab, vocab_out);
  std::cout << "train " << train_set.size() << " examples, eval " << eval_set.size() << " examples; best eval accuracy "
            << r.best_accuracy << " at step " << r.best_step << "\n";
  return 0;
}

int cmd_eval(const DatasetFlags& ds_flags, const ModelFiles& files) {
  const auto scorer = files.scorer();
  if (!scorer) throw Error("--checkpoint and --vocab are required");
  const data::Dataset ds = ds_flags.build();
  const auto eval_set = data::encode_examples(ds.eval, *scorer->vocab, scorer->model->config());
  std::cout << "balanced eval accuracy " << harness::accuracy_eval(*scorer->model, eval_set) << " on "
            << eval_set.size() << " examples from " << ds.split.eval.size() << " conjectures\n";
  return 0;
}

void print_summary(const harness::ExperimentReport& r) {
  std::cout << std::left << std::setw(16) << "method";
  for (std::uint64_t b : harness::pc_buckets())
    std::cout << std::setw(12) << ("PC<=" + (b ? std::to_string(b) : std::string("inf")));
  std::cout << "\n";
  for (const auto& s : r.summaries) {
    std::cout << std::setw(16) << s.method;
    for (std::uint64_t b : harness::pc_buckets()) {
      std::ostringstream cell;
      cell << s.proved.at(b) << " (" << std::fixed << std::setprecision(1) << s.percent.at(b) << "%)";
      std::cout << std::setw(12) << cell.str();
    }
    std::cout << "\n";
  }
  std::cout << "union " << r.unions.total << " of " << r.problems.size();
  for (const auto& [m, n] : r.unions.unique) std::cout << ", " << m << " unique " << n;
  std::cout << "\n";
}

int cmd_experiment(const std::string& config_path, const std::string& out, const std::string& curves,
                   std::optional<std::uint64_t> budget, std::optional<std::size_t> workers) {
  harness::ExperimentConfig c = harness::load_experiment_config(config_path);
  if (budget) c.budget = *budget;
  if (workers) c.workers = *workers;
  const auto corpus = harness::load_corpus(c);
  const auto methods = harness::resolve_methods(c);
  const harness::ExperimentReport r = harness::run_corpus(corpus, methods, harness::run_options(c), harness::to_json(c));
  {
    std::ofstream f = open_out(out);
    harness::write_report(f, r);
  }
  {
    std::ofstream f = open_out(fs::path(out).replace_extension(".timings.tsv"));
    harness::write_timings(f, r);
  }
  if (!curves.empty()) harness::emit_curves(r, curves);
  print_summary(r);
  return 0;
}

int cmd_premsel(const std::string& file, const ModelFiles& files, const SearchFlags& flags,
                const std::vector<std::size_t>& levels, std::size_t top) {
  const auto scorer = files.scorer();
  if (!scorer) throw Error("--checkpoint and --vocab are required");
  const fol::Problem p = fol::load_tptp_file(file);
  const auto ranking = premsel::rank_premises(p, premsel::model_scorer(*scorer));
  const auto ps = premsel::premises(p);
  for (std::size_t i = 0; i < std::min(top, ranking.size()); ++i)
    std::cout << std::setw(4) << i + 1 << "  " << std::fixed << std::setprecision(6) << ranking[i].score << "  "
              << ps[ranking[i].unit].name << "\n";
  premsel::CascadeConfig c;
  c.levels = levels;
  c.guidance = flags.config(scorer);
  const premsel::CascadeResult r = premsel::cascade_prove(p, ranking, c);
  for (const auto& l : r.transcript)
    std::cout << "% level " << l.level << ": " << sat::status_name(l.status) << ", processed " << l.processed << "\n";
  print_result(r.result, p.name);
  if (r.result.result.proof)
    std::cout << "% proof " << (sat::verify_proof(*r.result.result.proof, p).ok ? "verified" : "REJECTED")
              << " against the full problem\n";
  return 0;
}

int cmd_verify(const std::string& problem_file, const std::string& derivation) {
  fol::Problem p = fol::load_tptp_file(problem_file);
  const sat::Proof proof = sat::parse_derivation(read_file(derivation), p.signature);
  const sat::VerifyResult v = sat::verify_proof(proof, p);
  std::cout << (v.ok ? "verified" : "rejected: " + v.reason) << "\n";
  return v.ok ? 0 : 1;
}

int cmd_report(const std::string& file, const std::string& curves) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file);
  const harness::ExperimentReport r = harness::read_report(in);
  const auto problems = harness::check_report(r);
  for (const auto& m : problems) std::cout << "mismatch: " << m << "\n";
  print_summary(r);
  if (!curves.empty()) harness::emit_curves(r, curves);
  return problems.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saturation prover with learned clause selection"};
  app.require_subcommand(1);

  auto* prove = app.add_subcommand("prove", "Prove one TPTP problem");
  std::string prove_file, proof_out;
  SearchFlags prove_flags;
  ModelFiles prove_model;
  prove->add_option("problem", prove_file, "TPTP file")->required();
  prove->add_option("--proof", proof_out, "Write the derivation here");
  prove_flags.add(prove);
  prove_model.add(prove);

  auto* trace = app.add_subcommand("trace", "Record baseline proof traces over a corpus");
  std::string trace_dir, trace_out = "traces.jsonl";
  std::uint64_t trace_seed = 1, trace_processed = 5000, trace_generated = 100000;
  trace->add_option("--corpus-dir", trace_dir, "Directory of .p files (default: generated corpus)");
  trace->add_option("--corpus-seed", trace_seed, "Generated corpus seed");
  trace->add_option("--max-processed", trace_processed, "Processed-clause limit per problem");
  trace->add_option("--max-generated", trace_generated, "Generated-clause cap per problem");
  trace->add_option("--out", trace_out, "Trace file");

  auto* train = app.add_subcommand("train", "Train a clause scorer on traces");
  DatasetFlags train_ds;
  nn::ModelConfig mc;
  nn::TrainConfig tc;
  std::string arch = "cnn", ckpt_out = "model.ckpt", vocab_out = "model.vocab", metrics;
  std::uint64_t init_seed = 1;
  train_ds.add(train);
  train->add_option("--arch", arch, "cnn, wavenet, treernn or treelstm");
  train->add_option("--dim", mc.dim, "Embedding width");
  train->add_option("--hidden", mc.hidden, "Combiner hidden width");
  train->add_option("--cnn-layers", mc.cnn_layers);
  train->add_option("--wavenet-blocks", mc.wavenet_blocks);
  train->add_option("--tree-layers", mc.tree_layers);
  train->add_option("--token-dropout", mc.token_dropout);
  train->add_option("--feature-dropout", mc.feature_dropout);
  train->add_option("--steps", tc.steps);
  train->add_option("--batch", tc.batch_size);
  train->add_option("--eval-every", tc.eval_every);
  train->add_option("--lr", tc.adam.lr);
  train->add_option("--seed", tc.seed, "Shuffle and dropout seed");
  train->add_option("--init-seed", init_seed, "Parameter initialization seed");
  train->add_option("--out", ckpt_out, "Checkpoint of the best evaluation step");
  train->add_option("--vocab-out", vocab_out, "Vocabulary file");
  train->add_option("--metrics", metrics, "Metric log");

  auto* eval = app.add_subcommand("eval-acc", "Balanced held-out accuracy of a checkpoint");
  DatasetFlags eval_ds;
  ModelFiles eval_model;
  eval_ds.add(eval);
  eval_model.add(eval);

  auto* experiment = app.add_subcommand("experiment", "Run a declarative experiment file");
  std::string exp_config, exp_out = "report.jsonl", exp_curves;
  std::optional<std::uint64_t> exp_budget;
  std::optional<std::size_t> exp_workers;
  experiment->add_option("config", exp_config, "Experiment JSON")->required();
  experiment->add_option("--out", exp_out, "Report file");
  experiment->add_option("--curves", exp_curves, "Directory for PC curves");
  experiment->add_option("--budget", exp_budget, "Override the budget");
  experiment->add_option("--workers", exp_workers, "Override the worker count");

  auto* ps = app.add_subcommand("premsel", "Rank premises and run the cascade on one problem");
  std::string ps_file;
  ModelFiles ps_model;
  SearchFlags ps_flags;
  std::vector<std::size_t> levels{32, 64, 128, 256};
  std::size_t top = 20;
  ps->add_option("problem", ps_file, "TPTP file")->required();
  ps->add_option("--levels", levels, "Cascade levels");
  ps->add_option("--top", top, "Ranked premises to print");
  ps_model.add(ps);
  ps_flags.add(ps);

  auto* verify = app.add_subcommand("verify", "Check a derivation against its problem");
  std::string v_problem, v_proof;
  verify->add_option("problem", v_problem, "TPTP file")->required();
  verify->add_option("derivation", v_proof, "Derivation written by prove --proof")->required();

  auto* rep = app.add_subcommand("report", "Check and summarize a report");
  std::string rep_file, rep_curves;
  rep->add_option("report", rep_file, "Report file")->required();
  rep->add_option("--curves", rep_curves, "Directory for PC curves");

  auto* corpus = app.add_subcommand("corpus", "Write the generated corpus as .p files");
  std::string corpus_out = "corpus";
  harness::CorpusOptions corpus_options;
  corpus->add_option("--out", corpus_out, "Output directory");
  corpus->add_option("--seed", corpus_options.seed);
  corpus->add_option("--distractor-problems", corpus_options.distractor_problems);
  corpus->add_option("--distractors", corpus_options.distractors_per_problem);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*prove) return cmd_prove(prove_file, prove_flags, prove_model, proof_out);
    if (*trace) return cmd_trace(trace_dir, trace_seed, trace_processed, trace_generated, trace_out);
    if (*train) {
      mc.arch = nn::parse_architecture(arch);
      return cmd_train(train_ds, mc, tc, ckpt_out, vocab_out, metrics, init_seed);
    }
    if (*eval) return cmd_eval(eval_ds, eval_model);
    if (*experiment) return cmd_experiment(exp_config, exp_out, exp_curves, exp_budget, exp_workers);
    if (*ps) return cmd_premsel(ps_file, ps_model, ps_flags, levels, top);
    if (*verify) return cmd_verify(v_problem, v_proof);
    if (*rep) return cmd_report(rep_file, rep_curves);
    if (*corpus) {
      const auto problems = harness::generate_corpus(corpus_options);
      harness::write_corpus(corpus_out, problems);
      std::cout << problems.size() << " problems written to " << corpus_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
