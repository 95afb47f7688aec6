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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "ged/error.hpp"
#include "ged/grad_check.hpp"
#include "ged/tensor.hpp"
#include "test_util.hpp"

using namespace ged;
using doctest::Approx;

TEST_CASE("shape basics") {
  CHECK(Shape{2, 3}.numel() == 6);
  CHECK(Shape{4}.rank() == 1);
  CHECK(Shape{2, 3}.str() == "[2x3]");
  CHECK_THROWS_AS(Shape({0}), ShapeError);
  CHECK_THROWS_AS(Shape({1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(Tensor::from(Shape{2, 2}, {1, 2, 3}), ShapeError);
}

TEST_CASE("item requires a scalar") {
  CHECK(Tensor::scalar(2.5).item() == 2.5);
  CHECK_THROWS_AS(Tensor::vector({1, 2}).item(), ContractError);
}

TEST_CASE("matvec forward and backward") {
  Graph g;
  auto w = Tensor::from(Shape{2, 3}, {1, 2, 3, 4, 5, 6}, true);
  auto x = Tensor::vector({1, 0, -1}, true);
  auto y = g.matvec(w, x);
  CHECK(y[0] == -2.0);
  CHECK(y[1] == -2.0);
  auto upstream = Tensor::vector({1, 2});
  g.backward(g.sum(g.mul(y, upstream)));
  // dW = u x^T, dx = W^T u
  const std::vector<double> dw(w.grad_view().begin(), w.grad_view().end());
  CHECK(dw == std::vector<double>{1, 0, -1, 2, 0, -2});
  const std::vector<double> dx(x.grad_view().begin(), x.grad_view().end());
  CHECK(dx == std::vector<double>{9, 12, 15});
}

TEST_CASE("elementwise derivatives") {
  Graph g;
  auto a = Tensor::vector({0.3, -1.2}, true);
  auto loss = g.sum(g.add(g.tanh(a), g.sigmoid(a)));
  g.backward(loss);
  for (std::size_t i = 0; i < 2; ++i) {
    const double t = std::tanh(a[i]);
    const double s = 1.0 / (1.0 + std::exp(-a[i]));
    CHECK(a.grad_view()[i] == Approx(1 - t * t + s * (1 - s)).epsilon(1e-14));
  }
}

TEST_CASE("fan-out accumulates gradients") {
  Graph g;
  auto x = Tensor::vector({2.0, 3.0}, true);
  auto loss = g.sum(g.mul(x, x));  // sum x^2
  g.backward(loss);
  CHECK(x.grad_view()[0] == 4.0);
  CHECK(x.grad_view()[1] == 6.0);
}

TEST_CASE("gradients accumulate across backward calls until zero_grad") {
  auto x = Tensor::vector({1.0}, true);
  for (int i = 0; i < 2; ++i) {
    Graph g;
    g.backward(g.scale(g.sum(x), 3.0));
  }
  CHECK(x.grad_view()[0] == 6.0);
  x.zero_grad();
  CHECK(x.grad_view()[0] == 0.0);
}

TEST_CASE("backward seed scales every gradient") {
  auto x = Tensor::vector({1.0, -2.0}, true);
  Graph g;
  g.backward(g.sum(g.tanh(x)), 0.25);
  CHECK(x.grad_view()[0] == Approx(0.25 * (1 - std::pow(std::tanh(1.0), 2))));
}

TEST_CASE("concat and row route gradients to their sources") {
  Graph g;
  auto table = Tensor::from(Shape{3, 2}, {1, 2, 3, 4, 5, 6}, true);
  auto r = g.row(table, 1);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 4.0);
  auto b = Tensor::vector({7.0}, true);
  auto c = g.concat({r, b, r});
  REQUIRE(c.size() == 5);
  CHECK(c[2] == 7.0);
  g.backward(g.sum(g.mul(c, Tensor::vector({1, 2, 3, 4, 5}))));
  const std::vector<double> dt(table.grad_view().begin(), table.grad_view().end());
  CHECK(dt == std::vector<double>{0, 0, 5, 7, 0, 0});
  CHECK(b.grad_view()[0] == 3.0);
  CHECK_THROWS_AS(g.row(table, 3), ShapeError);
}

TEST_CASE("n-ary add") {
  Graph g;
  auto a = Tensor::vector({1, 2}, true);
  auto b = Tensor::vector({10, 20}, true);
  auto s = g.add({a, b, a});
  CHECK(s[0] == 12.0);
  g.backward(g.sum(s));
  CHECK(a.grad_view()[0] == 2.0);
  CHECK(b.grad_view()[1] == 1.0);
  CHECK_THROWS_AS(g.add(a, Tensor::vector({1, 2, 3})), ShapeError);
}

TEST_CASE("softmax properties") {
  ged::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto z = ged::testing::random_values(rng, 1 + rng.index(6), 20.0);
    const auto p = softmax(z);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == Approx(1.0).epsilon(1e-14));
    for (double v : p) CHECK(v >= 0.0);
    auto shifted = z;
    for (double& v : shifted) v += 123.0;
    const auto q = softmax(shifted);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i] == Approx(p[i]).epsilon(1e-12));
  }
  const double big[] = {1000.0, 0.0};
  const auto p = softmax(big);
  CHECK(std::isfinite(p[0]));
  CHECK(p[0] == 1.0);
}

TEST_CASE("logistic is stable at extremes") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(800.0) == 1.0);
  CHECK(logistic(-800.0) >= 0.0);
  CHECK(std::isfinite(logistic(-800.0)));
  CHECK(logistic(2.0) + logistic(-2.0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("softmax cross-entropy value and gradient") {
  Graph g;
  auto z = Tensor::vector({1.0, 2.0}, true);
  auto r = g.softmax_xent(z, 1);
  const double p1 = std::exp(2.0) / (std::exp(1.0) + std::exp(2.0));
  CHECK(r.probs[1] == Approx(p1).epsilon(1e-14));
  CHECK(r.loss.item() == Approx(-std::log(p1)).epsilon(1e-14));
  g.backward(r.loss);
  CHECK(z.grad_view()[0] == Approx(1.0 - p1).epsilon(1e-14));
  CHECK(z.grad_view()[1] == Approx(p1 - 1.0).epsilon(1e-14));
  CHECK_THROWS_AS(g.softmax_xent(z, 2), LabelError);
  CHECK_THROWS_AS(g.softmax_xent(Tensor::vector({1.0}), 0), ShapeError);
}

TEST_CASE("cross-entropy stays finite for confident wrong logits") {
  Graph g;
  auto r = g.softmax_xent(Tensor::vector({800.0, -800.0}, true), 1);
  CHECK(std::isfinite(r.loss.item()));
  CHECK(r.loss.item() == Approx(1600.0));
}

TEST_CASE("inference mode records nothing") {
  Graph g(GradMode::kNone);
  auto w = Tensor::from(Shape{2, 2}, {1, 0, 0, 1}, true);
  auto y = g.tanh(g.matvec(w, Tensor::vector({1, 2})));
  CHECK(g.num_ops() == 0);
  CHECK(y.size() == 2);
}

TEST_CASE("ops without trainable inputs are not recorded") {
  Graph g;
  g.tanh(Tensor::vector({1, 2}));
  CHECK(g.num_ops() == 0);
  g.tanh(Tensor::vector({1, 2}, true));
  CHECK(g.num_ops() == 1);
  CHECK(g.op_kinds().front() == OpKind::kTanh);
}

TEST_CASE("backward needs a scalar loss") {
  Graph g;
  auto y = g.tanh(Tensor::vector({1, 2}, true));
  CHECK_THROWS_AS(g.backward(y), ContractError);
}

TEST_CASE("backward is deterministic") {
  auto run = [] {
    auto w = Tensor::from(Shape{3, 3}, {0.1, -0.2, 0.3, 0.4, 0.5, -0.6, 0.7, 0.8, 0.9}, true);
    auto x = Tensor::vector({0.3, -0.1, 0.2}, true);
    Graph g;
    auto h = g.tanh(g.matvec(w, x));
    auto h2 = g.sigmoid(g.matvec(w, h));
    g.backward(g.softmax_xent(g.concat({h2, h}), 2).loss);
    return std::vector<double>(w.grad_view().begin(), w.grad_view().end());
  };
  CHECK(run() == run());
}

TEST_CASE("clone copies values only") {
  auto a = Tensor::vector({1, 2}, true);
  auto b = a.clone();
  b.values()[0] = 9;
  CHECK(a[0] == 1.0);
  CHECK_FALSE(a.same_as(b));
}

TEST_CASE("grad_check on a composite function") {
  ged::Rng rng(11);
  auto w = Tensor::from(Shape{3, 4}, ged::testing::random_values(rng, 12), true);
  auto v = Tensor::vector(ged::testing::random_values(rng, 4), true);
  auto u = Tensor::vector(ged::testing::random_values(rng, 3), true);
  const LossBuilder f = [&](Graph& g) {
    auto h = g.tanh(g.matvec(w, v));
    auto s = g.sigmoid(g.add(h, u));
    auto both = g.concat({g.mul(s, h), u});
    return g.add(g.softmax_xent(both, 4).loss, g.scale(g.sum(g.mul(v, v)), 0.1));
  };
  const auto report = grad_check(f, {{"w", w}, {"v", v}, {"u", u}});
  CHECK(report.passed);
  CHECK(report.max_rel_error < 1e-6);
  CHECK(report.entries_checked == 19);
  for (double gval : w.grad_view()) CHECK(gval == 0.0);

  CHECK_THROWS_AS(grad_check(f, {{"w", w}}, 1e-3), ContractError);
}

TEST_CASE("grad_check detects a wrong gradient") {
  auto x = Tensor::vector({0.5, -0.3}, true);
  // Loss evaluated through tanh but the builder scales differently on each
  // call, so the numeric and analytic gradients disagree.
  int calls = 0;
  const LossBuilder f = [&](Graph& g) {
    ++calls;
    const double k = calls == 1 ? 2.0 : 1.0;
    return g.scale(g.sum(g.tanh(x)), k);
  };
  const auto report = grad_check(f, {{"x", x}});
  CHECK_FALSE(report.passed);
  CHECK(report.worst_param == "x");
}
