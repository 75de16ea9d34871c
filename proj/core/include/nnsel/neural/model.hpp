#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nnsel/fol/parse_tree.hpp"
#include "nnsel/neural/graph.hpp"
#include "nnsel/neural/tensor.hpp"

namespace nnsel::nn {

enum class Architecture : std::uint32_t { Cnn = 1, WaveNet = 2, TreeRnn = 3, TreeLstm = 4 };

std::string_view architecture_name(Architecture a);
/// Accepts cnn, wavenet, treernn, treelstm.
Architecture parse_architecture(std::string_view name);
inline bool is_sequence_model(Architecture a) {
  return a == Architecture::Cnn || a == Architecture::WaveNet;
}

struct ModelConfig {
  Architecture arch = Architecture::Cnn;
  std::uint32_t vocab_size = 0;
  std::uint32_t dim = 64;
  std::uint32_t hidden = 128;
  std::uint32_t cnn_layers = 3;
  std::uint32_t cnn_patch = 5;
  std::uint32_t wavenet_blocks = 3;
  std::uint32_t wavenet_layers = 7;
  std::uint32_t tree_layers = 1;
  std::uint32_t max_len = 512;
  float token_dropout = 0.0f;
  float feature_dropout = 0.0f;
  std::uint64_t vocab_hash = 0;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

enum class Tower : std::uint8_t { Clause = 0, Conjecture = 1 };

/// Network input for one formula: tokens for sequence models, an indexed
/// parse tree for tree models.
struct ModelInput {
  std::vector<std::uint32_t> tokens;
  fol::CurriedTree tree;
};

struct ForwardMode {
  bool training = false;
  std::mt19937_64* rng = nullptr;  // required when training with dropout
};

/// Conjecture-side part of the combiner's first layer, computed once per
/// conjecture: W1[:, dim:] v_nc + b1.
struct ConjectureContext {
  std::vector<double> embedding;
  std::vector<double> partial;
};

/// Two towers sharing one embedding table, plus the combiner
///   logit = W2 relu(W1 [v_c; v_nc] + b1) + b2.
class Model {
 public:
  Model() = default;
  /// Randomly initialized, seeded; parameter values are float-representable.
  Model(const ModelConfig& config, std::uint64_t seed);
  /// Same layout with every parameter zero.
  static Model zeros(const ModelConfig& config);

  const ModelConfig& config() const noexcept { return config_; }
  std::vector<Parameter>& parameters() noexcept { return params_; }
  const std::vector<Parameter>& parameters() const noexcept { return params_; }
  Parameter& parameter(std::string_view name);
  const Parameter& parameter(std::string_view name) const;
  std::size_t parameter_count() const;
  Gradients zero_gradients() const;

  /// Rounds every parameter to the nearest float.
  void quantize();

  Var embed(Graph& g, const ModelInput& input, Tower tower, const ForwardMode& mode) const;
  Var logit(Graph& g, Var clause_vec, Var conj_vec) const;

  /// One gated residual layer, x + tanh(C_d x) * sigmoid(C'_d x) with d = 2^layer.
  Var wavenet_layer(Graph& g, Var x, Tower tower, std::size_t block, std::size_t layer) const;
  /// x + (layers of the block applied to feature-dropped x).
  Var wavenet_block(Graph& g, Var x, Tower tower, std::size_t block, const ForwardMode& mode) const;

  /// Eval-mode conveniences.
  std::vector<double> embed(const ModelInput& input, Tower tower) const;
  ConjectureContext conjecture_context(const ModelInput& conjecture) const;
  ConjectureContext conjecture_context(std::span<const double> conj_vec) const;
  double score(std::span<const double> clause_vec, const ConjectureContext& ctx) const;
  double score(std::span<const double> clause_vec, std::span<const double> conj_vec) const;

 private:
  struct TreeKind {
    std::size_t w = npos, b = npos;
  };
  struct TowerLayout {
    std::vector<std::size_t> conv_w, conv_b;      // CNN layers, or WaveNet filter convs
    std::vector<std::size_t> gate_w, gate_b;      // WaveNet gate convs
    std::vector<std::array<TreeKind, 4>> tree;    // per layer: apply, or, not, and
  };
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  struct Uninit {};
  Model(const ModelConfig& config, Uninit);
  std::size_t add(std::string name, std::vector<std::size_t> shape);
  void layout();

  Var embed_sequence(Graph& g, const std::vector<std::uint32_t>& tokens, const TowerLayout& t,
                     const ForwardMode& mode) const;
  Var embed_tree(Graph& g, const fol::CurriedTree& tree, Tower tower, const TowerLayout& t) const;

  ModelConfig config_;
  std::vector<Parameter> params_;
  std::size_t embedding_ = npos;
  TowerLayout towers_[2];
  std::size_t w1_ = npos, b1_ = npos, w2_ = npos, b2_ = npos;
};

}  // namespace nnsel::nn
