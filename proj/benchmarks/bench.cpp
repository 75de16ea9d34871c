#include <benchmark/benchmark.h>

#include <memory>
#include <string>
#include <vector>

#include "nnsel/fol/tptp.hpp"
#include "nnsel/fol/vocabulary.hpp"
#include "nnsel/guidance/guidance.hpp"
#include "nnsel/harness/corpus.hpp"
#include "nnsel/neural/graph.hpp"
#include "nnsel/neural/model.hpp"
#include "nnsel/saturation/prover.hpp"
#include "nnsel/saturation/subsumption.hpp"
#include "nnsel/saturation/unify.hpp"

using namespace nnsel;

namespace {

void BM_Unify(benchmark::State& state) {
  fol::Signature sig;
  const auto a = fol::parse_clause("p(f(X, g(Y, a)), h(Z, Z), g(X, b))", sig);
  const auto b = fol::parse_clause("p(f(h(U, c), g(V, a)), h(k(W), k(W)), g(h(U, c), b))", sig);
  const fol::Term rhs = sat::shift_vars(b[0].atom, 16);
  for (auto _ : state) {
    sat::Substitution s;
    benchmark::DoNotOptimize(sat::unify(a[0].atom, rhs, s));
  }
}
BENCHMARK(BM_Unify);

void BM_Subsumption(benchmark::State& state) {
  fol::Signature sig;
  const auto general = fol::parse_clause("~q(X, Y) | ~q(Y, Z) | q(X, Z)", sig);
  std::string text;
  for (int i = 0; i < state.range(0); ++i) {
    if (!text.empty()) text += " | ";
    text += "~q(c" + std::to_string(i) + ", c" + std::to_string(i + 1) + ")";
  }
  text += " | q(c0, c" + std::to_string(state.range(0)) + ")";
  const auto specific = fol::parse_clause(text, sig);
  for (auto _ : state) benchmark::DoNotOptimize(sat::subsumes(general, specific));
}
BENCHMARK(BM_Subsumption)->Arg(4)->Arg(16)->Arg(64);

void BM_Conv1d(benchmark::State& state) {
  const std::size_t T = static_cast<std::size_t>(state.range(0)), d = static_cast<std::size_t>(state.range(1));
  nn::Tensor x({T, d}, 0.5), w({d, d, 5}, 0.01), b({d}, 0.1);
  for (auto _ : state) {
    nn::Graph g;
    benchmark::DoNotOptimize(g.value(nn::ops::conv1d(g, g.constant(x), g.constant(w), g.constant(b), 1)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(T));
}
BENCHMARK(BM_Conv1d)->Args({64, 16})->Args({192, 16})->Args({192, 64});

void BM_ProveAuto(benchmark::State& state) {
  const auto corpus = harness::generate_corpus();
  const fol::Problem p = harness::parse(corpus.at(static_cast<std::size_t>(state.range(0))));
  sat::SearchConfig c;
  c.limits.max_processed = 2000;
  c.limits.max_generated = 20000;
  for (auto _ : state) benchmark::DoNotOptimize(sat::prove(p, c).processed_count);
  state.SetLabel(p.name);
}
BENCHMARK(BM_ProveAuto)->Arg(0)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ScoreClause(benchmark::State& state) {
  const fol::Vocabulary vocab({"<PAD>", "<OOV>", "<SEP>", "p", "q", "f", "g", "a", "b", "X", "Y", "~", "|", "(", ")", ","});
  nn::ModelConfig mc;
  mc.vocab_size = static_cast<std::uint32_t>(vocab.size());
  mc.dim = static_cast<std::uint32_t>(state.range(0));
  mc.hidden = 64;
  mc.vocab_hash = vocab.hash();
  const nn::Model m(mc, 1);
  nn::ModelInput in;
  for (int i = 0; i < 190; ++i) in.tokens.push_back(static_cast<std::uint32_t>(3 + i % 13));
  const auto ctx = m.conjecture_context(in);
  for (auto _ : state) benchmark::DoNotOptimize(m.score(m.embed(in, nn::Tower::Clause), ctx));
}
BENCHMARK(BM_ScoreClause)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
