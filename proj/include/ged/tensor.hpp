// Copyright 2026 The ged Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense 64-bit tensors and a tape-based reverse-mode differentiator.
//
// A Tensor is a shared handle: copies alias the same storage. Parameters are
// long-lived tensors created with requires_grad; intermediates are created by
// Graph operations and live as long as some handle (usually the Graph's tape)
// refers to them. Gradients accumulate until zero_grad() is called.

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace ged {

/// Rank 1 (vector) or rank 2 (row-major matrix). A scalar is the vector {1}.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::size_t> dims);
  explicit Shape(std::vector<std::size_t> dims);

  std::size_t rank() const { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t numel() const;
  std::string str() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

namespace detail {
struct TensorData {
  Shape shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty until first use
  bool requires_grad = false;
};
}  // namespace detail

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<double> values, bool requires_grad = false);
  static Tensor vector(std::vector<double> values, bool requires_grad = false);
  static Tensor scalar(double v, bool requires_grad = false);

  bool defined() const { return data_ != nullptr; }
  const Shape& shape() const { return data_->shape; }
  std::size_t size() const { return data_->values.size(); }
  bool requires_grad() const { return data_->requires_grad; }
  void set_requires_grad(bool on) { data_->requires_grad = on; }

  std::span<double> values() { return data_->values; }
  std::span<const double> values() const { return data_->values; }
  double operator[](std::size_t i) const { return data_->values[i]; }
  double item() const;

  bool has_grad() const { return !data_->grad.empty(); }
  /// Gradient storage, allocated (zero-filled) on first access.
  std::span<double> grad();
  /// Read-only gradient; empty span when never written.
  std::span<const double> grad_view() const { return data_->grad; }
  void zero_grad();

  /// Deep copy of values (gradient and graph history are not copied).
  Tensor clone() const;

  bool same_as(const Tensor& other) const { return data_ == other.data_; }

 private:
  explicit Tensor(std::shared_ptr<detail::TensorData> d) : data_(std::move(d)) {}
  std::shared_ptr<detail::TensorData> data_;
};

enum class OpKind {
  kMatvec,
  kAdd,
  kMul,
  kTanh,
  kSigmoid,
  kConcat,
  kRow,
  kSum,
  kScale,
  kSoftmaxXent,
};

struct SoftmaxXentResult {
  Tensor probs;  // not differentiable; probs are a by-product
  Tensor loss;   // scalar
};

enum class GradMode {
  kRecord,  // record differentiable ops for backward()
  kNone,    // evaluate only; nothing is recorded
};

/// Records operations on tensors for one forward pass and replays them in
/// reverse on backward(). Single-threaded; build a fresh Graph per example.
class Graph {
 public:
  Graph() = default;
  explicit Graph(GradMode mode) : recording_(mode == GradMode::kRecord) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  Graph(Graph&&) = default;
  Graph& operator=(Graph&&) = default;

  Tensor matvec(const Tensor& w, const Tensor& x);
  Tensor add(const Tensor& a, const Tensor& b);
  /// n-ary sum of equal-shaped tensors.
  Tensor add(std::span<const Tensor> terms);
  Tensor add(std::initializer_list<Tensor> terms) {
    return add(std::span<const Tensor>(terms.begin(), terms.size()));
  }
  Tensor mul(const Tensor& a, const Tensor& b);
  Tensor tanh(const Tensor& a);
  Tensor sigmoid(const Tensor& a);
  Tensor concat(std::span<const Tensor> parts);
  Tensor concat(std::initializer_list<Tensor> parts) {
    return concat(std::span<const Tensor>(parts.begin(), parts.size()));
  }
  /// Row `index` of a matrix, as a vector. Gradient flows into that row.
  Tensor row(const Tensor& table, std::size_t index);
  Tensor sum(const Tensor& a);
  Tensor scale(const Tensor& a, double factor);
  SoftmaxXentResult softmax_xent(const Tensor& logits, std::size_t gold);

  /// Accumulates d(seed * loss)/d(t) into every requires_grad tensor reachable
  /// from `loss`. `loss` must be a scalar produced on this graph (or a leaf).
  void backward(const Tensor& loss, double seed = 1.0);

  std::size_t num_ops() const { return ops_.size(); }
  /// Kinds in recording order; exposed for inspection in tests.
  std::vector<OpKind> op_kinds() const;

 private:
  struct Op {
    OpKind kind;
    Tensor out;
    std::vector<Tensor> in;
    std::size_t aux = 0;  // row index, gold label
    double scalar = 0.0;  // scale factor
    Tensor saved{};       // softmax probabilities
  };

  bool any_requires_grad(std::span<const Tensor> ts) const;
  void record(Op op);
  void backprop(const Op& op);

  std::vector<Op> ops_;
  bool recording_ = true;
};

/// Numerically stable softmax, no graph.
std::vector<double> softmax(std::span<const double> logits);

double logistic(double z);

}  // namespace ged
