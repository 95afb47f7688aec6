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

#include "ged/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ged/error.hpp"
#include "ged/kernels.hpp"

namespace ged {

Shape::Shape(std::initializer_list<std::size_t> dims) : Shape(std::vector<std::size_t>(dims)) {}

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty() || dims_.size() > 2) {
    throw ShapeError("tensors have rank 1 or 2, got rank " + std::to_string(dims_.size()));
  }
  for (std::size_t d : dims_) {
    if (d == 0) throw ShapeError("zero dimension in " + str());
  }
}

std::size_t Shape::numel() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::string Shape::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "x" : "") << dims_[i];
  os << ']';
  return os.str();
}

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  auto d = std::make_shared<detail::TensorData>();
  d->values.assign(shape.numel(), 0.0);
  d->shape = std::move(shape);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::from(Shape shape, std::vector<double> values, bool requires_grad) {
  if (values.size() != shape.numel()) {
    throw ShapeError("value count " + std::to_string(values.size()) + " does not match shape " +
                     shape.str());
  }
  auto d = std::make_shared<detail::TensorData>();
  d->shape = std::move(shape);
  d->values = std::move(values);
  d->requires_grad = requires_grad;
  return Tensor(std::move(d));
}

Tensor Tensor::vector(std::vector<double> values, bool requires_grad) {
  const std::size_t n = values.size();
  return from(Shape{n}, std::move(values), requires_grad);
}

Tensor Tensor::scalar(double v, bool requires_grad) { return from(Shape{1}, {v}, requires_grad); }

double Tensor::item() const {
  if (size() != 1) throw ContractError("item() on non-scalar tensor " + shape().str());
  return data_->values[0];
}

std::span<double> Tensor::grad() {
  if (data_->grad.empty()) data_->grad.assign(data_->values.size(), 0.0);
  return data_->grad;
}

void Tensor::zero_grad() {
  if (!data_->grad.empty()) std::fill(data_->grad.begin(), data_->grad.end(), 0.0);
}

Tensor Tensor::clone() const {
  auto d = std::make_shared<detail::TensorData>();
  d->shape = data_->shape;
  d->values = data_->values;
  d->requires_grad = data_->requires_grad;
  return Tensor(std::move(d));
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::vector<double> softmax(std::span<const double> logits) {
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - mx);
    z += out[i];
  }
  for (double& p : out) p /= z;
  return out;
}

// ---------------------------------------------------------------------------
// Graph

namespace {

void require_vector(const Tensor& t, const char* op) {
  if (t.shape().rank() != 1) {
    throw ShapeError(std::string(op) + " expects a vector, got " + t.shape().str());
  }
}

void require_same(const Tensor& a, const Tensor& b, const char* op) {
  if (!(a.shape() == b.shape())) {
    throw ShapeError(std::string(op) + ": " + a.shape().str() + " vs " + b.shape().str());
  }
}

}  // namespace

bool Graph::any_requires_grad(std::span<const Tensor> ts) const {
  return recording_ && std::any_of(ts.begin(), ts.end(), [](const Tensor& t) { return t.requires_grad(); });
}

void Graph::record(Op op) {
  op.out.set_requires_grad(true);
  ops_.push_back(std::move(op));
}

Tensor Graph::matvec(const Tensor& w, const Tensor& x) {
  require_vector(x, "matvec");
  if (w.shape().rank() != 2 || w.shape()[1] != x.shape()[0]) {
    throw ShapeError("matvec: " + w.shape().str() + " x " + x.shape().str());
  }
  const std::size_t rows = w.shape()[0], cols = w.shape()[1];
  Tensor out = Tensor::zeros(Shape{rows});
  kernels::active().gemv(w.values().data(), rows, cols, x.values().data(), out.values().data());
  if (recording_ && (w.requires_grad() || x.requires_grad())) record({OpKind::kMatvec, out, {w, x}});
  return out;
}

Tensor Graph::add(const Tensor& a, const Tensor& b) {
  require_same(a, b, "add");
  Tensor out = Tensor::zeros(a.shape());
  kernels::active().add(a.values().data(), b.values().data(), out.values().data(), a.size());
  if (recording_ && (a.requires_grad() || b.requires_grad())) record({OpKind::kAdd, out, {a, b}});
  return out;
}

Tensor Graph::add(std::span<const Tensor> terms) {
  if (terms.empty()) throw ContractError("add of zero terms");
  for (const Tensor& t : terms) require_same(terms[0], t, "add");
  Tensor out = terms[0].clone();
  out.set_requires_grad(false);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    kernels::active().axpy(1.0, terms[i].values().data(), out.values().data(), out.size());
  }
  if (any_requires_grad(terms)) {
    record({OpKind::kAdd, out, std::vector<Tensor>(terms.begin(), terms.end())});
  }
  return out;
}

Tensor Graph::mul(const Tensor& a, const Tensor& b) {
  require_same(a, b, "mul");
  Tensor out = Tensor::zeros(a.shape());
  kernels::active().mul(a.values().data(), b.values().data(), out.values().data(), a.size());
  if (recording_ && (a.requires_grad() || b.requires_grad())) record({OpKind::kMul, out, {a, b}});
  return out;
}

Tensor Graph::tanh(const Tensor& a) {
  Tensor out = Tensor::zeros(a.shape());
  auto src = a.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = std::tanh(src[i]);
  if (recording_ && a.requires_grad()) record({OpKind::kTanh, out, {a}});
  return out;
}

Tensor Graph::sigmoid(const Tensor& a) {
  Tensor out = Tensor::zeros(a.shape());
  auto src = a.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = logistic(src[i]);
  if (recording_ && a.requires_grad()) record({OpKind::kSigmoid, out, {a}});
  return out;
}

Tensor Graph::concat(std::span<const Tensor> parts) {
  if (parts.empty()) throw ContractError("concat of zero parts");
  std::size_t n = 0;
  for (const Tensor& p : parts) {
    require_vector(p, "concat");
    n += p.size();
  }
  Tensor out = Tensor::zeros(Shape{n});
  double* dst = out.values().data();
  for (const Tensor& p : parts) dst = std::copy(p.values().begin(), p.values().end(), dst);
  if (any_requires_grad(parts)) {
    record({OpKind::kConcat, out, std::vector<Tensor>(parts.begin(), parts.end())});
  }
  return out;
}

Tensor Graph::row(const Tensor& table, std::size_t index) {
  if (table.shape().rank() != 2) throw ShapeError("row() expects a matrix, got " + table.shape().str());
  if (index >= table.shape()[0]) {
    throw ShapeError("row " + std::to_string(index) + " out of range for " + table.shape().str());
  }
  const std::size_t cols = table.shape()[1];
  auto src = table.values().subspan(index * cols, cols);
  Tensor out = Tensor::from(Shape{cols}, std::vector<double>(src.begin(), src.end()));
  if (recording_ && table.requires_grad()) {
    Op op{OpKind::kRow, out, {table}};
    op.aux = index;
    record(std::move(op));
  }
  return out;
}

Tensor Graph::sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.values()) s += v;
  Tensor out = Tensor::scalar(s);
  if (recording_ && a.requires_grad()) record({OpKind::kSum, out, {a}});
  return out;
}

Tensor Graph::scale(const Tensor& a, double factor) {
  Tensor out = Tensor::zeros(a.shape());
  auto src = a.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = factor * src[i];
  if (recording_ && a.requires_grad()) {
    Op op{OpKind::kScale, out, {a}};
    op.scalar = factor;
    record(std::move(op));
  }
  return out;
}

SoftmaxXentResult Graph::softmax_xent(const Tensor& logits, std::size_t gold) {
  require_vector(logits, "softmax_xent");
  const std::size_t k = logits.size();
  if (k < 2) throw ShapeError("softmax_xent needs at least 2 classes, got " + logits.shape().str());
  if (gold >= k) {
    throw LabelError("gold label " + std::to_string(gold) + " out of range for " +
                     std::to_string(k) + " classes");
  }
  auto z = logits.values();
  const double mx = *std::max_element(z.begin(), z.end());
  double denom = 0.0;
  for (double v : z) denom += std::exp(v - mx);
  const double lse = mx + std::log(denom);
  std::vector<double> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = std::exp(z[i] - lse);
  Tensor probs = Tensor::vector(std::move(p));
  Tensor loss = Tensor::scalar(lse - z[gold]);
  if (recording_ && logits.requires_grad()) {
    Op op{OpKind::kSoftmaxXent, loss, {logits}};
    op.aux = gold;
    op.saved = probs;
    record(std::move(op));
  }
  return {probs, loss};
}

void Graph::backward(const Tensor& loss, double seed) {
  if (loss.size() != 1) throw ContractError("backward from non-scalar tensor " + loss.shape().str());
  if (!loss.requires_grad()) return;
  Tensor root = loss;
  root.grad()[0] += seed;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    if (it->out.has_grad()) backprop(*it);
  }
}

void Graph::backprop(const Op& op) {
  const auto& k = kernels::active();
  auto g = op.out.grad_view();
  switch (op.kind) {
    case OpKind::kMatvec: {
      Tensor w = op.in[0], x = op.in[1];
      const std::size_t rows = w.shape()[0], cols = w.shape()[1];
      if (w.requires_grad()) k.ger_acc(w.grad().data(), rows, cols, g.data(), x.values().data());
      if (x.requires_grad()) k.gemv_t_acc(w.values().data(), rows, cols, g.data(), x.grad().data());
      break;
    }
    case OpKind::kAdd:
      for (Tensor t : op.in) {
        if (t.requires_grad()) k.axpy(1.0, g.data(), t.grad().data(), g.size());
      }
      break;
    case OpKind::kMul: {
      Tensor a = op.in[0], b = op.in[1];
      if (a.requires_grad()) k.mul_acc(g.data(), b.values().data(), a.grad().data(), g.size());
      if (b.requires_grad()) k.mul_acc(g.data(), a.values().data(), b.grad().data(), g.size());
      break;
    }
    case OpKind::kTanh: {
      Tensor a = op.in[0];
      auto y = op.out.values();
      auto da = a.grad();
      for (std::size_t i = 0; i < g.size(); ++i) da[i] += g[i] * (1.0 - y[i] * y[i]);
      break;
    }
    case OpKind::kSigmoid: {
      Tensor a = op.in[0];
      auto y = op.out.values();
      auto da = a.grad();
      for (std::size_t i = 0; i < g.size(); ++i) da[i] += g[i] * y[i] * (1.0 - y[i]);
      break;
    }
    case OpKind::kConcat: {
      std::size_t offset = 0;
      for (Tensor t : op.in) {
        if (t.requires_grad()) k.axpy(1.0, g.data() + offset, t.grad().data(), t.size());
        offset += t.size();
      }
      break;
    }
    case OpKind::kRow: {
      Tensor table = op.in[0];
      const std::size_t cols = table.shape()[1];
      k.axpy(1.0, g.data(), table.grad().data() + op.aux * cols, cols);
      break;
    }
    case OpKind::kSum: {
      Tensor a = op.in[0];
      auto da = a.grad();
      for (double& v : da) v += g[0];
      break;
    }
    case OpKind::kScale: {
      Tensor a = op.in[0];
      k.axpy(op.scalar, g.data(), a.grad().data(), g.size());
      break;
    }
    case OpKind::kSoftmaxXent: {
      Tensor logits = op.in[0];
      auto p = op.saved.values();
      auto dz = logits.grad();
      for (std::size_t i = 0; i < p.size(); ++i) {
        dz[i] += g[0] * (p[i] - (i == op.aux ? 1.0 : 0.0));
      }
      break;
    }
  }
}

std::vector<OpKind> Graph::op_kinds() const {
  std::vector<OpKind> kinds;
  kinds.reserve(ops_.size());
  for (const Op& op : ops_) kinds.push_back(op.kind);
  return kinds;
}

}  // namespace ged
