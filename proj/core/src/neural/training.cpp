#include "nnsel/neural/training.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "nnsel/error.hpp"

namespace nnsel::nn {

namespace {

std::vector<std::uint32_t> input_key(const ModelInput& in) {
  if (!in.tree.nodes.empty()) {
    std::vector<std::uint32_t> key;
    key.reserve(in.tree.nodes.size() * 4);
    for (const fol::TreeNode& n : in.tree.nodes) {
      key.push_back(static_cast<std::uint32_t>(n.kind));
      key.push_back(n.token);
      key.push_back(static_cast<std::uint32_t>(n.left));
      key.push_back(static_cast<std::uint32_t>(n.right));
    }
    return key;
  }
  return in.tokens;
}

}  // namespace

LossAndGrads loss_and_grads(std::span<const Example> batch, const Model& model, bool train_mode,
                            std::mt19937_64& rng) {
  if (batch.empty()) throw Error("loss_and_grads needs a nonempty batch");
  LossAndGrads out;
  out.grads = model.zero_gradients();
  const double scale = 1.0 / static_cast<double>(batch.size());
  ForwardMode mode{train_mode, &rng};
  for (const Example& ex : batch) {
    Graph g(&out.grads);
    Var vc = model.embed(g, ex.clause, Tower::Clause, mode);
    Var vnc = model.embed(g, ex.conjecture, Tower::Conjecture, mode);
    Var loss = ops::bce_with_logit(g, model.logit(g, vc, vnc), ex.label);
    out.loss += g.value(loss)[0] * scale;
    g.backward(loss, scale);
  }
  if (!std::isfinite(out.loss)) throw Error("non-finite loss");
  return out;
}

double batch_loss(std::span<const Example> batch, const Model& model) {
  if (batch.empty()) throw Error("batch_loss needs a nonempty batch");
  double total = 0;
  for (const Example& ex : batch) {
    Graph g;
    Var vc = model.embed(g, ex.clause, Tower::Clause, ForwardMode{});
    Var vnc = model.embed(g, ex.conjecture, Tower::Conjecture, ForwardMode{});
    total += g.value(ops::bce_with_logit(g, model.logit(g, vc, vnc), ex.label))[0];
  }
  return total / static_cast<double>(batch.size());
}

void adam_step(Model& model, const Gradients& grads, AdamState& state) {
  auto& params = model.parameters();
  if (grads.size() != params.size()) throw Error("gradient count does not match parameters");
  if (state.m.empty()) {
    for (const Parameter& p : params) {
      state.m.emplace_back(p.value.shape);
      state.v.emplace_back(p.value.shape);
    }
  }
  ++state.step;
  const AdamConfig& c = state.config;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& w = params[i].value;
    const Tensor& g = grads[i];
    if (g.size() != w.size()) throw Error("gradient shape does not match parameter");
    Tensor& m = state.m[i];
    Tensor& v = state.v[i];
    for (std::size_t k = 0; k < w.size(); ++k) {
      m[k] = c.beta1 * m[k] + (1 - c.beta1) * g[k];
      v[k] = c.beta2 * v[k] + (1 - c.beta2) * g[k] * g[k];
      w[k] -= c.lr * (m[k] / bc1) / (std::sqrt(v[k] / bc2) + c.eps);
    }
  }
  model.quantize();
}

std::vector<double> predict(const Model& model, std::span<const Example> examples) {
  std::map<std::vector<std::uint32_t>, ConjectureContext> contexts;
  std::vector<double> out;
  out.reserve(examples.size());
  for (const Example& ex : examples) {
    auto key = input_key(ex.conjecture);
    auto it = contexts.find(key);
    if (it == contexts.end()) it = contexts.emplace(std::move(key), model.conjecture_context(ex.conjecture)).first;
    out.push_back(model.score(model.embed(ex.clause, Tower::Clause), it->second));
  }
  return out;
}

double accuracy(const Model& model, std::span<const Example> examples) {
  if (examples.empty()) return 0.0;
  std::vector<double> p = predict(model, examples);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if ((p[i] > 0.5) == (examples[i].label > 0.5)) ++correct;
  return static_cast<double>(correct) / static_cast<double>(examples.size());
}

TrainResult train(std::span<const Example> train_set, std::span<const Example> eval_set, Model model,
                  const TrainConfig& config, std::ostream* metrics) {
  if (train_set.empty()) throw Error("empty training set");
  if (config.batch_size == 0) throw Error("batch size must be positive");
  std::mt19937_64 rng(config.seed);
  AdamState adam;
  adam.config = config.adam;
  TrainResult result;
  result.best = model;
  result.best_accuracy = -1.0;

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = order.size();
  double window_loss = 0;
  std::uint64_t window_steps = 0;
  std::vector<Example> batch;

  auto evaluate = [&](std::uint64_t step) {
    MetricRecord rec;
    rec.step = step;
    rec.loss = window_steps ? window_loss / static_cast<double>(window_steps) : 0.0;
    rec.accuracy = accuracy(model, eval_set.empty() ? train_set : eval_set);
    result.log.push_back(rec);
    if (metrics) *metrics << rec.step << ' ' << rec.loss << ' ' << rec.accuracy << '\n' << std::flush;
    if (rec.accuracy > result.best_accuracy) {
      result.best_accuracy = rec.accuracy;
      result.best_step = step;
      result.best = model;
    }
    window_loss = 0;
    window_steps = 0;
  };

  for (std::uint64_t step = 1; step <= config.steps; ++step) {
    batch.clear();
    while (batch.size() < std::min<std::size_t>(config.batch_size, train_set.size())) {
      if (cursor == order.size()) {
        std::shuffle(order.begin(), order.end(), rng);
        cursor = 0;
      }
      batch.push_back(train_set[order[cursor++]]);
    }
    LossAndGrads lg = loss_and_grads(batch, model, true, rng);
    adam_step(model, lg.grads, adam);
    window_loss += lg.loss;
    ++window_steps;
    if ((config.eval_every && step % config.eval_every == 0) || step == config.steps) evaluate(step);
  }
  if (config.steps == 0) evaluate(0);
  result.last = std::move(model);
  return result;
}

}  // namespace nnsel::nn
