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
#include <string>
#include <vector>

#include "ged/error.hpp"
#include "ged/layers.hpp"
#include "ged/model.hpp"
#include "ged/synth.hpp"
#include "ged/train.hpp"
#include "test_util.hpp"

using namespace ged;
using ged::testing::tiny_config;
using ged::testing::tiny_model;

namespace {

std::vector<EncodedSentence> random_batch(Rng& rng, std::size_t n, std::size_t vocab) {
  std::vector<EncodedSentence> out(n);
  for (auto& s : out) {
    s.ids = ged::testing::random_ids(rng, 2 + rng.index(4), vocab);
    for (std::size_t t = 0; t < s.ids.size(); ++t) s.labels.push_back(static_cast<int>(rng.index(2)));
  }
  return out;
}

std::vector<double> flat_values(const Model& m) {
  std::vector<double> out;
  for (const auto& p : m.parameters()) out.insert(out.end(), p.tensor.values().begin(), p.tensor.values().end());
  return out;
}

std::vector<double> flat_grads(const Model& m) {
  std::vector<double> out;
  for (const auto& p : m.parameters()) {
    Tensor t = p.tensor;
    out.insert(out.end(), t.grad().begin(), t.grad().end());
  }
  return out;
}

Corpus small_corpus(std::uint64_t seed, std::size_t n) {
  return generate(default_templates(), uniform_rules(0.15), n, seed).labeled();
}

}  // namespace

TEST_CASE("train config defaults and parsing") {
  const TrainConfig d;
  CHECK(d.learning_rate == 0.001);
  CHECK(d.batch_size == 64);
  CHECK(d.beta1 == 0.9);
  CHECK(d.beta2 == 0.999);
  CHECK(d.eps == 1e-8);
  const auto c = TrainConfig::from_kv(KeyValueConfig::parse("learning_rate = 0.01\nbatch_size = 8\n"));
  CHECK(c.learning_rate == 0.01);
  CHECK(c.batch_size == 8);
  CHECK_THROWS_AS(TrainConfig::from_kv(KeyValueConfig::parse("lr = 1\n")), ConfigError);
  CHECK_THROWS_AS(TrainConfig::from_kv(KeyValueConfig::parse("batch_size = 0\n")), ConfigError);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
  auto x = Tensor::vector({0.3, -0.7}, true);
  x.grad();
  std::vector<NamedTensor> params = {{"x", x}};
  auto state = make_adam_state(params);
  adam_step(params, state, TrainConfig{});
  CHECK(x[0] == 0.3);
  CHECK(x[1] == -0.7);
  CHECK(state.t == 1);
}

TEST_CASE("adam: single step closed form") {
  auto x = Tensor::vector({0.0}, true);
  std::vector<NamedTensor> params = {{"x", x}};
  auto state = make_adam_state(params);
  x.grad()[0] = 1.0;
  TrainConfig cfg;
  adam_step(params, state, cfg);
  // m_hat = 1, v_hat = 1 after bias correction.
  CHECK(x[0] == doctest::Approx(-cfg.learning_rate / (1.0 + cfg.eps)).epsilon(1e-13));
}

TEST_CASE("adam: constant gradient steps approach the learning rate") {
  auto x = Tensor::vector({0.0}, true);
  std::vector<NamedTensor> params = {{"x", x}};
  auto state = make_adam_state(params);
  TrainConfig cfg;
  double last_step = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const double before = x[0];
    x.zero_grad();
    x.grad()[0] = 0.3;
    adam_step(params, state, cfg);
    last_step = before - x[0];
  }
  CHECK(last_step == doctest::Approx(cfg.learning_rate).epsilon(1e-6));
  CHECK(state.t == 5000);
}

TEST_CASE("adam: non-finite gradient aborts before any update") {
  auto a = Tensor::vector({1.0}, true);
  auto b = Tensor::vector({2.0}, true);
  std::vector<NamedTensor> params = {{"a", a}, {"b", b}};
  auto state = make_adam_state(params);
  a.grad()[0] = 1.0;
  b.grad()[0] = std::nan("");
  try {
    adam_step(params, state, TrainConfig{});
    FAIL("expected TrainingError");
  } catch (const TrainingError& e) {
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
  CHECK(a[0] == 1.0);
  CHECK(state.t == 0);
}

TEST_CASE("adam: skipped parameters stay fixed") {
  auto a = Tensor::vector({1.0}, true);
  auto b = Tensor::vector({2.0}, true);
  std::vector<NamedTensor> params = {{"a", a}, {"b", b}};
  auto state = make_adam_state(params);
  a.grad()[0] = 1.0;
  b.grad()[0] = 1.0;
  adam_step(params, state, TrainConfig{}, {true, false});
  CHECK(a[0] == 1.0);
  CHECK(b[0] < 2.0);
}

TEST_CASE("batch loss is the mean of per-sentence token means") {
  Rng rng(6);
  Model m = tiny_model(Architecture::kBiLstm);
  const auto batch = random_batch(rng, 5, 12);
  double want = 0.0;
  for (const auto& s : batch) {
    const auto probs = forward(m, s.ids);
    double sentence = 0.0;
    for (std::size_t t = 0; t < s.ids.size(); ++t) {
      sentence -= std::log(probs[t][static_cast<std::size_t>(s.labels[t])]);
    }
    want += sentence / static_cast<double>(s.ids.size());
  }
  want /= static_cast<double>(batch.size());
  CHECK(batch_loss(m, batch) == doctest::Approx(want).epsilon(1e-13));
  m.zero_grad();
  CHECK(accumulate_batch_gradients(m, batch) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("batch gradient is the mean of per-sentence gradients") {
  Rng rng(12);
  Model m = tiny_model(Architecture::kCnn);
  const auto batch = random_batch(rng, 4, 12);
  m.zero_grad();
  accumulate_batch_gradients(m, batch);
  const auto together = flat_grads(m);
  std::vector<double> separate(together.size(), 0.0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    m.zero_grad();
    accumulate_batch_gradients(m, std::span(batch).subspan(i, 1));
    const auto g = flat_grads(m);
    for (std::size_t k = 0; k < g.size(); ++k) separate[k] += g[k] / static_cast<double>(batch.size());
  }
  for (std::size_t k = 0; k < together.size(); ++k) {
    CHECK(together[k] == doctest::Approx(separate[k]).epsilon(1e-12));
  }
}

TEST_CASE("one small adam step decreases the batch loss") {
  Rng rng(13);
  for (auto a : kAllArchitectures) {
    Model m = tiny_model(a, 100);
    const auto batch = random_batch(rng, 6, 12);
    const double before = batch_loss(m, batch);
    const auto snapshot = m.clone();
    bool decreased = false;
    double lr = 1e-4;
    for (int attempt = 0; attempt < 4 && !decreased; ++attempt, lr /= 2) {
      m.assign_values(snapshot);
      m.zero_grad();
      accumulate_batch_gradients(m, batch);
      auto state = make_adam_state(m.parameters());
      TrainConfig cfg;
      cfg.learning_rate = lr;
      adam_step(m.parameters(), state, cfg);
      decreased = batch_loss(m, batch) < before;
    }
    CAPTURE(architecture_name(a));
    CHECK(decreased);
  }
}

TEST_CASE("zero epochs returns the initial model") {
  const Corpus c = small_corpus(1, 5);
  const auto vocab = Vocabulary::build(c, 1);
  Model m(tiny_config(Architecture::kCnn, vocab.size()));
  m.initialize(3);
  const auto before = flat_values(m);
  TrainConfig cfg;
  cfg.max_epochs = 0;
  const auto r = train(std::move(m), c, c, vocab, cfg);
  CHECK(r.history.empty());
  CHECK(r.best_epoch == 0);
  CHECK(flat_values(r.best) == before);
  CHECK(r.warnings.size() == 1);  // dev overlaps train
}

TEST_CASE("training is deterministic") {
  const Corpus tr = small_corpus(2, 40), dev = small_corpus(3, 10);
  const auto vocab = Vocabulary::build(tr, 1);
  auto run = [&](std::uint64_t seed) {
    Model m(tiny_config(Architecture::kBiRnn, vocab.size()));
    m.initialize(seed);
    TrainConfig cfg;
    cfg.max_epochs = 3;
    cfg.batch_size = 8;
    cfg.learning_rate = 0.01;
    cfg.seed = seed;
    auto r = train(std::move(m), tr, dev, vocab, cfg);
    return std::make_pair(history_csv(r.history), flat_values(r.best));
  };
  const auto a = run(5), b = run(5), c = run(6);
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(a.first != c.first);
}

TEST_CASE("history csv format") {
  const std::vector<EpochRecord> h = {{1, 0.5, 0.25, 0.125, 0.2}};
  CHECK(history_csv(h) == "epoch,loss,dev_P,dev_R,dev_F05\n1,0.5,0.25,0.125,0.20000000000000001\n");
}

TEST_CASE("a single sentence is memorized") {
  const Corpus c = {{{"the", "dogs", "likes", "a", "cat", "."}, {0, 0, 1, 0, 0, 0}}};
  const auto vocab = Vocabulary::build(c, 1);
  Model m(tiny_config(Architecture::kBiLstm, vocab.size()));
  m.initialize(1);
  TrainConfig cfg;
  cfg.max_epochs = 200;
  cfg.learning_rate = 0.05;
  cfg.batch_size = 1;
  const auto r = train(std::move(m), c, c, vocab, cfg);
  CHECK(r.history.back().loss < 0.01);
  CHECK(predict(r.best, vocab, c[0].tokens).labels == c[0].labels);
}

TEST_CASE("divergence aborts with the epoch and batch") {
  const Corpus c = small_corpus(4, 8);
  const auto vocab = Vocabulary::build(c, 1);
  Model m(tiny_config(Architecture::kBiRnn, vocab.size()));
  m.initialize(1);
  // Poison one weight so the forward pass produces NaN.
  Tensor w = m.param("out.W");
  w.values()[0] = std::nan("");
  TrainConfig cfg;
  cfg.max_epochs = 1;
  try {
    train(std::move(m), c, c, vocab, cfg);
    FAIL("expected TrainingError");
  } catch (const TrainingError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("epoch 1") != std::string::npos);
    CHECK(msg.find("batch 0") != std::string::npos);
  }
}

TEST_CASE("empty corpora are rejected") {
  const Corpus c = small_corpus(4, 2);
  const auto vocab = Vocabulary::build(c, 1);
  Model m(tiny_config(Architecture::kCnn, vocab.size()));
  CHECK_THROWS_AS(train(std::move(m), {}, c, vocab, TrainConfig{}), ContractError);
}

TEST_CASE("prediction thresholds") {
  Model m = tiny_model(Architecture::kBiLstm);
  const std::vector<std::size_t> ids = {2, 3, 4, 5};
  const auto p = predict(m, ids, 0.5);
  for (std::size_t t = 0; t < ids.size(); ++t) {
    CHECK(p.labels[t] == (p.prob_incorrect[t] >= 0.5 ? 1 : 0));
    CHECK(p.prob_incorrect[t] == forward(m, ids)[t][1]);
  }
  for (int l : predict(m, ids, 0.0).labels) CHECK(l == 1);
  for (int l : predict(m, ids, 1.0 + 1e-9).labels) CHECK(l == 0);
  CHECK_THROWS_AS(predict(m, std::vector<std::size_t>{}, 0.5), ContractError);
}
