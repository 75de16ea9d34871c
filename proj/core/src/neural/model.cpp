#include "nnsel/neural/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnsel/error.hpp"

namespace nnsel::nn {

namespace {

constexpr std::size_t kApply = 0, kOr = 1, kNot = 2, kAnd = 3;
constexpr const char* kKindNames[] = {"apply", "or", "not", "and"};

std::size_t kind_slot(fol::NodeKind k) {
  switch (k) {
    case fol::NodeKind::Apply: return kApply;
    case fol::NodeKind::Or: return kOr;
    case fol::NodeKind::Not: return kNot;
    case fol::NodeKind::And: return kAnd;
    case fol::NodeKind::Leaf: break;
  }
  throw Error("leaf has no kind weights");
}

std::size_t kind_arity(std::size_t slot) { return slot == kNot ? 1 : 2; }

// Portable uniform in [lo, hi); std distributions differ across libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Tensor dropout_mask(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double p, bool per_row) {
  Tensor m({rows, cols});
  const double keep = p >= 1.0 ? 0.0 : 1.0 / (1.0 - p);
  if (per_row) {
    for (std::size_t r = 0; r < rows; ++r) {
      double v = uniform(rng, 0, 1) < p ? 0.0 : keep;
      for (std::size_t c = 0; c < cols; ++c) m[r * cols + c] = v;
    }
  } else {
    std::vector<double> col(cols);
    for (double& v : col) v = uniform(rng, 0, 1) < p ? 0.0 : keep;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m[r * cols + c] = col[c];
  }
  return m;
}

}  // namespace

std::string_view architecture_name(Architecture a) {
  switch (a) {
    case Architecture::Cnn: return "cnn";
    case Architecture::WaveNet: return "wavenet";
    case Architecture::TreeRnn: return "treernn";
    case Architecture::TreeLstm: return "treelstm";
  }
  return "unknown";
}

Architecture parse_architecture(std::string_view name) {
  for (auto a : {Architecture::Cnn, Architecture::WaveNet, Architecture::TreeRnn, Architecture::TreeLstm})
    if (architecture_name(a) == name) return a;
  throw Error("unknown architecture: " + std::string(name));
}

Model::Model(const ModelConfig& config, Uninit) : config_(config) {
  if (config.vocab_size < 3) throw Error("vocabulary must hold the reserved tokens");
  if (config.dim == 0 || config.hidden == 0) throw Error("model dims must be positive");
  if (config.tree_layers == 0 || config.tree_layers > 3) throw Error("tree layers must be 1..3");
  layout();
}

Model Model::zeros(const ModelConfig& config) { return Model(config, Uninit{}); }

Model::Model(const ModelConfig& config, std::uint64_t seed) : Model(config, Uninit{}) {
  std::mt19937_64 rng(seed);
  for (Parameter& p : params_) {
    if (p.slot == embedding_) {
      const std::size_t dim = p.value.dim(1);
      for (std::size_t i = dim; i < p.value.size(); ++i) p.value[i] = uniform(rng, -0.05, 0.05);
      continue;
    }
    if (p.value.shape.size() < 2) continue;  // biases stay zero
    std::size_t fan_in = p.value.size() / p.value.dim(0);
    double bound = std::sqrt(3.0 / static_cast<double>(fan_in));
    for (double& v : p.value.data) v = uniform(rng, -bound, bound);
  }
  quantize();
}

std::size_t Model::add(std::string name, std::vector<std::size_t> shape) {
  Parameter p;
  p.name = std::move(name);
  p.value = Tensor(std::move(shape));
  p.slot = params_.size();
  params_.push_back(std::move(p));
  return params_.size() - 1;
}

void Model::layout() {
  const std::size_t d = config_.dim;
  embedding_ = add("embedding", {config_.vocab_size, d});
  for (int t = 0; t < 2; ++t) {
    const std::string prefix = t == 0 ? "clause." : "conjecture.";
    TowerLayout& tl = towers_[t];
    switch (config_.arch) {
      case Architecture::Cnn:
        for (std::uint32_t l = 0; l < config_.cnn_layers; ++l) {
          tl.conv_w.push_back(add(prefix + "conv" + std::to_string(l) + ".w", {d, d, config_.cnn_patch}));
          tl.conv_b.push_back(add(prefix + "conv" + std::to_string(l) + ".b", {d}));
        }
        break;
      case Architecture::WaveNet:
        for (std::uint32_t b = 0; b < config_.wavenet_blocks; ++b)
          for (std::uint32_t l = 0; l < config_.wavenet_layers; ++l) {
            std::string base = prefix + "block" + std::to_string(b) + ".layer" + std::to_string(l);
            tl.conv_w.push_back(add(base + ".filter.w", {d, d, 3}));
            tl.conv_b.push_back(add(base + ".filter.b", {d}));
            tl.gate_w.push_back(add(base + ".gate.w", {d, d, 3}));
            tl.gate_b.push_back(add(base + ".gate.b", {d}));
          }
        break;
      case Architecture::TreeRnn:
      case Architecture::TreeLstm: {
        const bool lstm = config_.arch == Architecture::TreeLstm;
        const std::size_t kinds = t == 0 ? 3 : 4;
        for (std::uint32_t l = 0; l < config_.tree_layers; ++l) {
          std::array<TreeKind, 4> layer{};
          for (std::size_t k = 0; k < kinds; ++k) {
            std::size_t n = kind_arity(k);
            std::size_t in = n * d + (l > 0 ? d : 0);
            std::size_t out = lstm ? (3 + n) * d : d;
            std::string base = prefix + "tree" + std::to_string(l) + "." + kKindNames[k];
            layer[k].w = add(base + ".w", {out, in});
            layer[k].b = add(base + ".b", {out});
          }
          tl.tree.push_back(layer);
        }
        break;
      }
    }
  }
  w1_ = add("combiner.w1", {config_.hidden, 2 * d});
  b1_ = add("combiner.b1", {config_.hidden});
  w2_ = add("combiner.w2", {1, config_.hidden});
  b2_ = add("combiner.b2", {1});
}

Parameter& Model::parameter(std::string_view name) {
  for (Parameter& p : params_)
    if (p.name == name) return p;
  throw Error("no parameter named " + std::string(name));
}

const Parameter& Model::parameter(std::string_view name) const {
  return const_cast<Model*>(this)->parameter(name);
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for (const Parameter& p : params_) n += p.value.size();
  return n;
}

Gradients Model::zero_gradients() const {
  Gradients g;
  g.reserve(params_.size());
  for (const Parameter& p : params_) g.emplace_back(p.value.shape);
  return g;
}

void Model::quantize() {
  for (Parameter& p : params_)
    for (double& v : p.value.data) v = static_cast<double>(static_cast<float>(v));
}

Var Model::embed(Graph& g, const ModelInput& input, Tower tower, const ForwardMode& mode) const {
  const TowerLayout& t = towers_[static_cast<int>(tower)];
  if (is_sequence_model(config_.arch)) return embed_sequence(g, input.tokens, t, mode);
  return embed_tree(g, input.tree, tower, t);
}

Var Model::embed_sequence(Graph& g, const std::vector<std::uint32_t>& tokens, const TowerLayout& t,
                          const ForwardMode& mode) const {
  const std::size_t T = tokens.size(), d = config_.dim;
  Var x = ops::gather(g, params_[embedding_], tokens);
  if (config_.arch == Architecture::Cnn) {
    for (std::size_t l = 0; l < t.conv_w.size(); ++l)
      x = ops::relu(g, ops::conv1d(g, x, g.param(params_[t.conv_w[l]]), g.param(params_[t.conv_b[l]]), 1));
    return ops::max_rows(g, x);
  }
  if (mode.training && !mode.rng && (config_.token_dropout > 0 || config_.feature_dropout > 0))
    throw Error("training-mode dropout needs a random source");
  if (mode.training && mode.rng && config_.token_dropout > 0)
    x = ops::mask(g, x, dropout_mask(*mode.rng, T, d, config_.token_dropout, true));
  const Tower tower = &t == &towers_[0] ? Tower::Clause : Tower::Conjecture;
  for (std::uint32_t b = 0; b < config_.wavenet_blocks; ++b) x = wavenet_block(g, x, tower, b, mode);
  return ops::max_rows(g, x);
}

Var Model::wavenet_layer(Graph& g, Var x, Tower tower, std::size_t block, std::size_t layer) const {
  if (config_.arch != Architecture::WaveNet) throw Error("not a WaveNet model");
  const TowerLayout& t = towers_[static_cast<int>(tower)];
  const std::size_t i = block * config_.wavenet_layers + layer;
  const std::uint32_t dil = 1u << layer;
  Var f = ops::tanh(g, ops::conv1d(g, x, g.param(params_[t.conv_w.at(i)]), g.param(params_[t.conv_b[i]]), dil));
  Var s = ops::sigmoid(g, ops::conv1d(g, x, g.param(params_[t.gate_w[i]]), g.param(params_[t.gate_b[i]]), dil));
  return ops::add(g, x, ops::mul(g, f, s));
}

Var Model::wavenet_block(Graph& g, Var x, Tower tower, std::size_t block, const ForwardMode& mode) const {
  Var z = x;
  if (mode.training && mode.rng && config_.feature_dropout > 0) {
    const Tensor& v = g.value(x);
    z = ops::mask(g, z, dropout_mask(*mode.rng, v.dim(0), v.dim(1), config_.feature_dropout, false));
  }
  for (std::uint32_t l = 0; l < config_.wavenet_layers; ++l) z = wavenet_layer(g, z, tower, block, l);
  return ops::add(g, x, z);
}

Var Model::embed_tree(Graph& g, const fol::CurriedTree& tree, Tower tower, const TowerLayout& t) const {
  if (tree.nodes.empty()) throw Error("empty parse tree");
  const bool lstm = config_.arch == Architecture::TreeLstm;
  const std::size_t d = config_.dim, n = tree.nodes.size();
  std::vector<Var> leaf(n);
  for (std::size_t i = 0; i < n; ++i) {
    const fol::TreeNode& node = tree.nodes[i];
    if (node.kind == fol::NodeKind::Leaf) {
      std::uint32_t tok = node.token;
      leaf[i] = ops::gather(g, params_[embedding_], std::span<const std::uint32_t>(&tok, 1));
    } else if (node.kind == fol::NodeKind::And && tower == Tower::Clause) {
      throw Error("conjunction node in a clause tree");
    }
  }
  Var zero_cell = lstm ? g.constant(Tensor({d})) : Var{};
  std::vector<Var> below;  // hidden states of the previous layer
  for (std::size_t l = 0; l < t.tree.size(); ++l) {
    std::vector<Var> h(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const fol::TreeNode& node = tree.nodes[i];
      if (node.kind == fol::NodeKind::Leaf) {
        h[i] = leaf[i];
        c[i] = zero_cell;
        continue;
      }
      const std::size_t k = kind_slot(node.kind);
      const TreeKind& weights = t.tree[l][k];
      std::vector<Var> parts{h[static_cast<std::size_t>(node.left)]};
      std::vector<Var> cells{c[static_cast<std::size_t>(node.left)]};
      if (kind_arity(k) == 2) {
        parts.push_back(h[static_cast<std::size_t>(node.right)]);
        cells.push_back(c[static_cast<std::size_t>(node.right)]);
      }
      if (l > 0) parts.push_back(below[i]);
      Var z = ops::concat(g, parts);
      Var pre = ops::linear(g, g.param(params_[weights.w]), z, g.param(params_[weights.b]));
      if (!lstm) {
        h[i] = ops::relu(g, pre);
        continue;
      }
      Var in = ops::sigmoid(g, ops::slice(g, pre, 0, d));
      Var out = ops::sigmoid(g, ops::slice(g, pre, d, d));
      Var upd = ops::tanh(g, ops::slice(g, pre, 2 * d, d));
      Var cell = ops::mul(g, in, upd);
      for (std::size_t j = 0; j < cells.size(); ++j) {
        Var f = ops::sigmoid(g, ops::slice(g, pre, (3 + j) * d, d));
        cell = ops::add(g, cell, ops::mul(g, f, cells[j]));
      }
      c[i] = cell;
      h[i] = ops::mul(g, out, ops::tanh(g, cell));
    }
    below = std::move(h);
  }
  // Leaf rows come out of gather as [1 x dim]; present every root as a vector.
  Var root = below[static_cast<std::size_t>(tree.root())];
  if (g.value(root).shape.size() != 1) root = ops::slice(g, root, 0, d);
  return root;
}

Var Model::logit(Graph& g, Var clause_vec, Var conj_vec) const {
  Var hidden = ops::relu(g, ops::linear(g, g.param(params_[w1_]), ops::concat(g, {clause_vec, conj_vec}),
                                        g.param(params_[b1_])));
  return ops::linear(g, g.param(params_[w2_]), hidden, g.param(params_[b2_]));
}

std::vector<double> Model::embed(const ModelInput& input, Tower tower) const {
  Graph g;
  Var v = embed(g, input, tower, ForwardMode{});
  return g.value(v).data;
}

ConjectureContext Model::conjecture_context(const ModelInput& conjecture) const {
  std::vector<double> v = embed(conjecture, Tower::Conjecture);
  return conjecture_context(v);
}

ConjectureContext Model::conjecture_context(std::span<const double> conj_vec) const {
  const std::size_t d = config_.dim, H = config_.hidden;
  if (conj_vec.size() != d) throw Error("conjecture vector has wrong size");
  const Tensor& w1 = params_[w1_].value;
  const Tensor& b1 = params_[b1_].value;
  ConjectureContext ctx;
  ctx.embedding.assign(conj_vec.begin(), conj_vec.end());
  ctx.partial.resize(H);
  for (std::size_t r = 0; r < H; ++r) {
    double acc = b1[r];
    const double* row = w1.ptr() + r * 2 * d + d;
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * conj_vec[c];
    ctx.partial[r] = acc;
  }
  return ctx;
}

double Model::score(std::span<const double> clause_vec, const ConjectureContext& ctx) const {
  const std::size_t d = config_.dim, H = config_.hidden;
  if (clause_vec.size() != d) throw Error("clause vector has wrong size");
  const Tensor& w1 = params_[w1_].value;
  const Tensor& w2 = params_[w2_].value;
  double logit = params_[b2_].value[0];
  for (std::size_t r = 0; r < H; ++r) {
    double acc = 0;
    const double* row = w1.ptr() + r * 2 * d;
    for (std::size_t c = 0; c < d; ++c) acc += row[c] * clause_vec[c];
    acc += ctx.partial[r];
    if (acc > 0) logit += w2[r] * acc;
  }
  if (!std::isfinite(logit)) throw Error("non-finite score");
  // Keep probabilities strictly inside (0, 1) even when the logit saturates.
  return std::clamp(sigmoid(logit), std::numeric_limits<double>::min(), std::nextafter(1.0, 0.0));
}

double Model::score(std::span<const double> clause_vec, std::span<const double> conj_vec) const {
  return score(clause_vec, conjecture_context(conj_vec));
}

}  // namespace nnsel::nn
