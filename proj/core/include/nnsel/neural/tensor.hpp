#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace nnsel::nn {

/// Dense row-major tensor of doubles.
struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> dims, double fill = 0.0)
      : shape(std::move(dims)), data(count(shape), fill) {}

  static std::size_t count(const std::vector<std::size_t>& dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  }

  std::size_t size() const noexcept { return data.size(); }
  std::size_t dim(std::size_t i) const { return shape.at(i); }
  double* ptr() noexcept { return data.data(); }
  const double* ptr() const noexcept { return data.data(); }
  double& operator[](std::size_t i) noexcept { return data[i]; }
  double operator[](std::size_t i) const noexcept { return data[i]; }

  friend bool operator==(const Tensor&, const Tensor&) = default;
};

/// Learnable tensor; `slot` is its position in the owning model's parameter list.
struct Parameter {
  std::string name;
  Tensor value;
  std::size_t slot = 0;
};

/// Gradient buffers indexed by Parameter::slot.
using Gradients = std::vector<Tensor>;

}  // namespace nnsel::nn
