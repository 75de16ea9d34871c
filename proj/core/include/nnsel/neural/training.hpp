#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "nnsel/neural/model.hpp"

namespace nnsel::nn {

struct Example {
  ModelInput clause;
  ModelInput conjecture;
  double label = 0.0;  // 1 = used in the proof
};

struct LossAndGrads {
  double loss = 0.0;
  Gradients grads;
};

/// Mean binary cross-entropy over `batch` and its gradient for every
/// parameter. Dropout is active only when `train_mode` is set.
LossAndGrads loss_and_grads(std::span<const Example> batch, const Model& model, bool train_mode,
                            std::mt19937_64& rng);
/// Eval-mode loss only.
double batch_loss(std::span<const Example> batch, const Model& model);

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<Tensor> m, v;
};

/// One bias-corrected Adam update; parameters are re-rounded to float.
void adam_step(Model& model, const Gradients& grads, AdamState& state);

/// Probability for each example under eval mode.
std::vector<double> predict(const Model& model, std::span<const Example> examples);
/// Fraction of examples with (p > 0.5) == label.
double accuracy(const Model& model, std::span<const Example> examples);

struct TrainConfig {
  std::uint32_t steps = 2000;
  std::uint32_t batch_size = 32;
  std::uint32_t eval_every = 100;
  AdamConfig adam;
  std::uint64_t seed = 1;
};

struct MetricRecord {
  std::uint64_t step = 0;
  double loss = 0.0;      // mean training loss since the previous record
  double accuracy = 0.0;  // on the evaluation set
};

struct TrainResult {
  Model best;  // highest evaluation accuracy, earliest on ties
  Model last;
  std::vector<MetricRecord> log;
  double best_accuracy = 0.0;
  std::uint64_t best_step = 0;
};

/// Minibatch Adam with a seeded shuffle. Evaluates every `eval_every` steps
/// and after the last step; appends one "step loss accuracy" line per
/// evaluation to `metrics` when given.
TrainResult train(std::span<const Example> train_set, std::span<const Example> eval_set, Model model,
                  const TrainConfig& config, std::ostream* metrics = nullptr);

}  // namespace nnsel::nn
