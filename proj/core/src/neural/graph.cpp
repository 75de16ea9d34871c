#include "nnsel/neural/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nnsel/error.hpp"

namespace nnsel::nn {

namespace {

void require_finite(const Tensor& t) {
  for (double v : t.data) {
    if (!std::isfinite(v)) throw Error("non-finite value in tensor computation");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(std::string("shape mismatch: ") + what);
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (std::size_t j = 0; j < 4; ++j) acc[j] += a[i + j] * b[i + j];
  for (; i < n; ++i) acc[0] += a[i] * b[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

// y[o] += sum_c x[c] * w[c * dout + o]
__attribute__((target_clones("arch=haswell", "default"))) void conv_row(double* __restrict y,
                                                                        const double* __restrict x,
                                                                        const double* __restrict w, std::size_t din,
                                                                        std::size_t dout) {
  for (std::size_t c = 0; c < din; ++c) {
    const double xc = x[c];
    const double* wc = w + c * dout;
    for (std::size_t o = 0; o < dout; ++o) y[o] += wc[o] * xc;
  }
}

}  // namespace

double sigmoid(double z) noexcept {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

Var Graph::constant(Tensor t) {
  require_finite(t);
  Node n;
  n.own = std::move(t);
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Graph::param(const Parameter& p) {
  Node n;
  n.ref = &p.value;
  n.param = &p;
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Var Graph::push(Tensor value, std::function<void(Graph&, Var)> back) {
  require_finite(value);
  Node n;
  n.own = std::move(value);
  if (sink_) n.back = std::move(back);
  nodes_.push_back(std::move(n));
  return Var{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Tensor& Graph::grad(Var v) {
  Node& n = nodes_[v.id];
  if (n.param) {
    Tensor& g = (*sink_)[n.param->slot];
    if (g.size() != n.param->value.size()) g = Tensor(n.param->value.shape);
    return g;
  }
  if (n.grad.size() != value(v).size()) n.grad = Tensor(value(v).shape);
  return n.grad;
}

void Graph::backward(Var output, double seed) {
  if (!sink_) throw Error("backward() on a graph without a gradient sink");
  if (value(output).size() != 1) throw Error("backward() needs a scalar output");
  grad(output)[0] += seed;
  for (std::size_t i = output.id + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.back && n.grad.size() != 0) n.back(*this, Var{static_cast<std::uint32_t>(i)});
  }
}

namespace ops {

Var gather(Graph& g, const Parameter& table, std::span<const std::uint32_t> ids) {
  const std::size_t vocab = table.value.dim(0), dim = table.value.dim(1);
  Tensor out({ids.size(), dim});
  for (std::size_t t = 0; t < ids.size(); ++t) {
    if (ids[t] >= vocab) throw Error("token id outside embedding table");
    std::copy_n(table.value.ptr() + ids[t] * dim, dim, out.ptr() + t * dim);
  }
  std::vector<std::uint32_t> idx(ids.begin(), ids.end());
  Var w = g.param(table);
  return g.push(std::move(out), [w, idx = std::move(idx), dim](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    Tensor& dw = gr.grad(w);
    for (std::size_t t = 0; t < idx.size(); ++t) {
      if (idx[t] == 0) continue;
      for (std::size_t k = 0; k < dim; ++k) dw[idx[t] * dim + k] += dy[t * dim + k];
    }
  });
}

Var conv1d(Graph& g, Var xv, Var wv, Var bv, std::uint32_t dilation) {
  const Tensor& x = g.value(xv);
  const Tensor& w = g.value(wv);
  const Tensor& b = g.value(bv);
  require(x.shape.size() == 2 && w.shape.size() == 3, "conv1d operands");
  const std::size_t T = x.dim(0), din = x.dim(1);
  const std::size_t dout = w.dim(0), s = w.dim(2);
  require(w.dim(1) == din && b.size() == dout, "conv1d kernel");
  const long half = static_cast<long>((s + 1) / 2);

  // Kernel re-laid out as [s][in][out] so the inner loops are contiguous axpys.
  std::vector<double> wk(s * din * dout);
  for (std::size_t o = 0; o < dout; ++o)
    for (std::size_t c = 0; c < din; ++c)
      for (std::size_t k = 0; k < s; ++k) wk[(k * din + c) * dout + o] = w[(o * din + c) * s + k];

  auto source = [T, half, dilation](std::size_t i, std::size_t k) -> long {
    long src = static_cast<long>(i) - static_cast<long>(dilation) * (static_cast<long>(k) + 1 - half);
    return (src < 0 || src >= static_cast<long>(T)) ? -1 : src;
  };

  Tensor y({T, dout});
  for (std::size_t i = 0; i < T; ++i) {
    double* yrow = y.ptr() + i * dout;
    for (std::size_t o = 0; o < dout; ++o) yrow[o] = b[o];
    for (std::size_t k = 0; k < s; ++k) {
      long src = source(i, k);
      if (src < 0) continue;
      conv_row(yrow, x.ptr() + static_cast<std::size_t>(src) * din, wk.data() + k * din * dout, din, dout);
    }
  }
  if (!g.tracking()) return g.push(std::move(y), nullptr);
  return g.push(std::move(y), [=, wk = std::move(wk)](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& xval = gr.value(xv);
    Tensor& dx = gr.grad(xv);
    Tensor& dw = gr.grad(wv);
    Tensor& db = gr.grad(bv);
    std::vector<double> dwk(wk.size(), 0.0);
    for (std::size_t i = 0; i < T; ++i) {
      const double* dyrow = dy.ptr() + i * dout;
      for (std::size_t o = 0; o < dout; ++o) db[o] += dyrow[o];
      for (std::size_t k = 0; k < s; ++k) {
        long src = source(i, k);
        if (src < 0) continue;
        const double* xrow = xval.ptr() + static_cast<std::size_t>(src) * din;
        double* dxrow = dx.ptr() + static_cast<std::size_t>(src) * din;
        for (std::size_t c = 0; c < din; ++c) {
          const double xc = xrow[c];
          const double* wc = wk.data() + (k * din + c) * dout;
          double* dwc = dwk.data() + (k * din + c) * dout;
          for (std::size_t o = 0; o < dout; ++o) dwc[o] += dyrow[o] * xc;
          dxrow[c] += dot(dyrow, wc, dout);
        }
      }
    }
    for (std::size_t o = 0; o < dout; ++o)
      for (std::size_t c = 0; c < din; ++c)
        for (std::size_t k = 0; k < s; ++k) dw[(o * din + c) * s + k] += dwk[(k * din + c) * dout + o];
  });
}

Var add(Graph& g, Var a, Var b) {
  const Tensor& x = g.value(a);
  const Tensor& y = g.value(b);
  require(x.size() == y.size(), "add");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return g.push(std::move(out), [a, b](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i];
    Tensor& db = gr.grad(b);
    for (std::size_t i = 0; i < dy.size(); ++i) db[i] += dy[i];
  });
}

Var mul(Graph& g, Var a, Var b) {
  const Tensor& x = g.value(a);
  const Tensor& y = g.value(b);
  require(x.size() == y.size(), "mul");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= y[i];
  return g.push(std::move(out), [a, b](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& xa = gr.value(a);
    const Tensor& xb = gr.value(b);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * xb[i];
    Tensor& db = gr.grad(b);
    for (std::size_t i = 0; i < dy.size(); ++i) db[i] += dy[i] * xa[i];
  });
}

Var mask(Graph& g, Var a, const Tensor& m) {
  const Tensor& x = g.value(a);
  require(x.size() == m.size(), "mask");
  Tensor out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= m[i];
  return g.push(std::move(out), [a, m](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * m[i];
  });
}

Var relu(Graph& g, Var a) {
  Tensor out = g.value(a);
  for (double& v : out.data) v = v > 0 ? v : 0.0;
  return g.push(std::move(out), [a](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& x = gr.value(a);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i)
      if (x[i] > 0) da[i] += dy[i];
  });
}

Var tanh(Graph& g, Var a) {
  Tensor out = g.value(a);
  for (double& v : out.data) v = std::tanh(v);
  return g.push(std::move(out), [a](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& y = gr.value(self);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * (1.0 - y[i] * y[i]);
  });
}

Var sigmoid(Graph& g, Var a) {
  Tensor out = g.value(a);
  for (double& v : out.data) v = nn::sigmoid(v);
  return g.push(std::move(out), [a](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& y = gr.value(self);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < dy.size(); ++i) da[i] += dy[i] * y[i] * (1.0 - y[i]);
  });
}

Var max_rows(Graph& g, Var xv) {
  const Tensor& x = g.value(xv);
  require(x.shape.size() == 2, "max_rows");
  const std::size_t T = x.dim(0), d = x.dim(1);
  Tensor out({d});
  std::vector<std::size_t> arg(d, 0);
  if (T > 0) {
    for (std::size_t c = 0; c < d; ++c) out[c] = x[c];
    for (std::size_t t = 1; t < T; ++t)
      for (std::size_t c = 0; c < d; ++c)
        if (x[t * d + c] > out[c]) {
          out[c] = x[t * d + c];
          arg[c] = t;
        }
  }
  return g.push(std::move(out), [xv, arg = std::move(arg), T, d](Graph& gr, Var self) {
    if (T == 0) return;
    const Tensor& dy = gr.grad(self);
    Tensor& dx = gr.grad(xv);
    for (std::size_t c = 0; c < d; ++c) dx[arg[c] * d + c] += dy[c];
  });
}

Var linear(Graph& g, Var wv, Var xv, Var bv) {
  const Tensor& w = g.value(wv);
  const Tensor& x = g.value(xv);
  const Tensor& b = g.value(bv);
  require(w.shape.size() == 2 && w.dim(1) == x.size() && w.dim(0) == b.size(), "linear");
  const std::size_t rows = w.dim(0), cols = w.dim(1);
  Tensor out({rows});
  for (std::size_t r = 0; r < rows; ++r) {
    out[r] = b[r] + dot(w.ptr() + r * cols, x.ptr(), cols);
  }
  return g.push(std::move(out), [wv, xv, bv, rows, cols](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    const Tensor& wval = gr.value(wv);
    const Tensor& xval = gr.value(xv);
    Tensor& dw = gr.grad(wv);
    Tensor& dx = gr.grad(xv);
    Tensor& db = gr.grad(bv);
    for (std::size_t r = 0; r < rows; ++r) {
      const double go = dy[r];
      db[r] += go;
      if (go == 0) continue;
      const double* wr = wval.ptr() + r * cols;
      double* dwr = dw.ptr() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) {
        dwr[c] += go * xval[c];
        dx[c] += go * wr[c];
      }
    }
  });
}

Var concat(Graph& g, std::span<const Var> parts) {
  std::size_t total = 0;
  for (Var p : parts) total += g.value(p).size();
  Tensor out({total});
  std::vector<Var> inputs(parts.begin(), parts.end());
  std::size_t at = 0;
  for (Var p : inputs) {
    const Tensor& v = g.value(p);
    std::copy(v.data.begin(), v.data.end(), out.data.begin() + static_cast<long>(at));
    at += v.size();
  }
  return g.push(std::move(out), [inputs = std::move(inputs)](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    std::size_t off = 0;
    for (Var p : inputs) {
      Tensor& dp = gr.grad(p);
      for (std::size_t i = 0; i < dp.size(); ++i) dp[i] += dy[off + i];
      off += dp.size();
    }
  });
}

Var slice(Graph& g, Var a, std::size_t offset, std::size_t length) {
  const Tensor& x = g.value(a);
  require(offset + length <= x.size(), "slice");
  Tensor out({length});
  std::copy_n(x.ptr() + offset, length, out.ptr());
  return g.push(std::move(out), [a, offset, length](Graph& gr, Var self) {
    const Tensor& dy = gr.grad(self);
    Tensor& da = gr.grad(a);
    for (std::size_t i = 0; i < length; ++i) da[offset + i] += dy[i];
  });
}

Var bce_with_logit(Graph& g, Var logit, double label) {
  const Tensor& z = g.value(logit);
  require(z.size() == 1, "bce_with_logit");
  const double x = z[0];
  // max(x,0) - x*y + log(1 + exp(-|x|))
  Tensor out({1}, std::max(x, 0.0) - x * label + std::log1p(std::exp(-std::abs(x))));
  return g.push(std::move(out), [logit, label, x](Graph& gr, Var self) {
    gr.grad(logit)[0] += gr.grad(self)[0] * (nn::sigmoid(x) - label);
  });
}

}  // namespace ops

}  // namespace nnsel::nn
