#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "nnsel/neural/tensor.hpp"

namespace nnsel::nn {

struct Var {
  std::uint32_t id = 0;
};

/// Dynamic reverse-mode differentiation tape. Built per example, so tree
/// topologies are wired on the fly. Without a gradient sink the graph only
/// evaluates values and records no backward closures.
class Graph {
 public:
  explicit Graph(Gradients* sink = nullptr) : sink_(sink) {}

  bool tracking() const noexcept { return sink_ != nullptr; }

  Var constant(Tensor t);
  Var param(const Parameter& p);

  const Tensor& value(Var v) const {
    const Node& n = nodes_[v.id];
    return n.ref ? *n.ref : n.own;
  }
  /// Gradient buffer of `v`; only valid during backward().
  Tensor& grad(Var v);

  /// Seeds d(output)/d(output) = seed and sweeps the tape in reverse. The
  /// output must be a single element.
  void backward(Var output, double seed = 1.0);

  /// Appends a node. `back` reads grad(result) and accumulates into the
  /// gradients of its inputs.
  Var push(Tensor value, std::function<void(Graph&, Var)> back);

  std::size_t size() const noexcept { return nodes_.size(); }

 private:
  struct Node {
    Tensor own;
    const Tensor* ref = nullptr;
    const Parameter* param = nullptr;
    Tensor grad;
    std::function<void(Graph&, Var)> back;
  };

  std::vector<Node> nodes_;
  Gradients* sink_;
};

namespace ops {

/// Rows of `table` selected by `ids`: [T x dim]. Row 0 (padding) gets no gradient.
Var gather(Graph& g, const Parameter& table, std::span<const std::uint32_t> ids);

/// Symmetric dilated convolution over the time axis with zero padding:
///   y[i] = b + sum_{j=1..s} W_j x[i - d (j - ceil(s/2))]
/// x is [T x in], w is [out x in x s], b is [out]; result [T x out].
Var conv1d(Graph& g, Var x, Var w, Var b, std::uint32_t dilation);

Var add(Graph& g, Var a, Var b);
Var mul(Graph& g, Var a, Var b);
/// Elementwise product with a constant mask (dropout).
Var mask(Graph& g, Var a, const Tensor& m);
Var relu(Graph& g, Var a);
Var tanh(Graph& g, Var a);
Var sigmoid(Graph& g, Var a);

/// Column-wise maximum over rows of a [T x d] matrix; first maximum wins ties.
Var max_rows(Graph& g, Var x);

/// W x + b with W [out x in], x and b vectors.
Var linear(Graph& g, Var w, Var x, Var b);
Var concat(Graph& g, std::span<const Var> parts);
inline Var concat(Graph& g, std::initializer_list<Var> parts) {
  return concat(g, std::span<const Var>(parts.begin(), parts.size()));
}
Var slice(Graph& g, Var a, std::size_t offset, std::size_t length);

/// Binary cross-entropy of sigmoid(logit) against `label` in {0, 1}.
Var bce_with_logit(Graph& g, Var logit, double label);

}  // namespace ops

double sigmoid(double z) noexcept;

}  // namespace nnsel::nn
